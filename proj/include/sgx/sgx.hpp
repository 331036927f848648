#pragma once

#include "sgx/canon.hpp"
#include "sgx/certificate.hpp"
#include "sgx/checkpoint.hpp"
#include "sgx/constructions.hpp"
#include "sgx/eigen.hpp"
#include "sgx/errors.hpp"
#include "sgx/forbidden.hpp"
#include "sgx/matrix.hpp"
#include "sgx/partition.hpp"
#include "sgx/polynomial.hpp"
#include "sgx/search.hpp"
#include "sgx/search_spec.hpp"
#include "sgx/sg6.hpp"
#include "sgx/signed_graph.hpp"
#include "sgx/spectra.hpp"
#include "sgx/structure.hpp"
#include "sgx/suites.hpp"
#include "sgx/vertex_set.hpp"
