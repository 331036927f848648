#pragma once

// Append-only journal of completed search ranges. One record per line:
//
//   range_start range_end best_value witness_sg6 spec_checksum
//
// Masks are decimal, range_end exclusive. A range that produced no
// candidate records "-" for both value and witness.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sgx/errors.hpp"

namespace sgx {

struct JournalRecord {
  std::uint64_t range_start = 0;
  std::uint64_t range_end = 0;
  std::optional<double> best_value;
  std::string witness;  // empty when best_value is empty
  std::string checksum;
};

inline std::string format_journal_record(const JournalRecord& r) {
  std::ostringstream os;
  os << r.range_start << ' ' << r.range_end << ' ';
  if (r.best_value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", *r.best_value);
    os << buf << ' ' << r.witness;
  } else {
    os << "- -";
  }
  os << ' ' << r.checksum;
  return os.str();
}

inline JournalRecord parse_journal_record(const std::string& line, std::size_t line_number) {
  std::istringstream is(line);
  std::string a, b, v, w, c, extra;
  if (!(is >> a >> b >> v >> w >> c) || (is >> extra))
    throw DomainError("checkpoint line " + std::to_string(line_number) + ": expected 5 fields");
  JournalRecord r;
  try {
    std::size_t used = 0;
    r.range_start = std::stoull(a, &used);
    if (used != a.size()) throw std::invalid_argument(a);
    r.range_end = std::stoull(b, &used);
    if (used != b.size()) throw std::invalid_argument(b);
    if (v != "-") {
      r.best_value = std::stod(v, &used);
      if (used != v.size()) throw std::invalid_argument(v);
    }
  } catch (const std::logic_error&) {
    throw DomainError("checkpoint line " + std::to_string(line_number) + ": malformed number");
  }
  if ((v == "-") != (w == "-"))
    throw DomainError("checkpoint line " + std::to_string(line_number) + ": value and witness must both be present");
  if (w != "-") r.witness = w;
  r.checksum = c;
  if (r.range_end <= r.range_start)
    throw DomainError("checkpoint line " + std::to_string(line_number) + ": empty range");
  return r;
}

/// Reads every record; a missing file yields no records. A truncated last
/// line (interrupted write) is ignored.
inline std::vector<JournalRecord> read_journal(const std::string& path) {
  std::vector<JournalRecord> out;
  std::ifstream in(path);
  if (!in) return out;
  std::string line;
  std::size_t ln = 0;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  const bool complete_tail = [&] {
    std::ifstream tail(path, std::ios::binary | std::ios::ate);
    if (!tail || tail.tellg() == 0) return true;
    tail.seekg(-1, std::ios::end);
    return tail.get() == '\n';
  }();
  for (std::size_t i = 0; i < lines.size(); ++i) {
    ln = i + 1;
    if (lines[i].empty()) continue;
    if (i + 1 == lines.size() && !complete_tail) break;
    out.push_back(parse_journal_record(lines[i], ln));
  }
  return out;
}

class JournalWriter {
 public:
  explicit JournalWriter(const std::string& path) : out_(path, std::ios::app) {
    if (!out_) throw DomainError("cannot open checkpoint journal '" + path + "' for appending");
  }

  void append(const JournalRecord& r) {
    std::lock_guard lock(mu_);
    out_ << format_journal_record(r) << '\n';
    out_.flush();
  }

 private:
  std::mutex mu_;
  std::ofstream out_;
};

}  // namespace sgx
