#pragma once

// Umbrella header for the almost-perfect-number toolkit.

#include "apn/nat.hpp"
#include "apn/ratio.hpp"
#include "apn/arith.hpp"
#include "apn/criteria.hpp"
#include "apn/pipeline.hpp"
#include "apn/sieve.hpp"
#include "apn/checkpoint.hpp"
#include "apn/search.hpp"
#include "apn/runner.hpp"
#include "apn/verify.hpp"
