#pragma once

#include <stdexcept>
#include <string>

namespace uqtb {

//! Argument outside the domain where a solution is defined (t <= 0, r = 0
//! for the point source, theta outside [-1, 1], ...).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

//! An adaptive quadrature exhausted its panel budget before meeting its
//! tolerance.
class ConvergenceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

//! The response is not strictly increasing in c, so the quantile identity
//! phi(F_theta^{-1}(p)) does not apply.
class MonotonicityError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace uqtb
