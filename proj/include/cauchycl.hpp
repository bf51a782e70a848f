#ifndef CAUCHYCL_HPP
#define CAUCHYCL_HPP

// Numerical core without the HTTP service or CLI helpers.
#include "cauchycl/bounds.hpp"
#include "cauchycl/catalog.hpp"
#include "cauchycl/constellation.hpp"
#include "cauchycl/descriptors.hpp"
#include "cauchycl/detector.hpp"
#include "cauchycl/error.hpp"
#include "cauchycl/geometry.hpp"
#include "cauchycl/io.hpp"
#include "cauchycl/noise.hpp"
#include "cauchycl/rng.hpp"

#endif  // CAUCHYCL_HPP
