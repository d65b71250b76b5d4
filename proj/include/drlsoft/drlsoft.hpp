#ifndef DRLSOFT_DRLSOFT_HPP
#define DRLSOFT_DRLSOFT_HPP

#include "algebra.hpp"
#include "enforce.hpp"
#include "error.hpp"
#include "generate.hpp"
#include "io.hpp"
#include "oracle.hpp"
#include "problem.hpp"
#include "rng.hpp"

#endif  // DRLSOFT_DRLSOFT_HPP
