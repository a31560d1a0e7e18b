#pragma once

#include <stdexcept>
#include <string>
#include <vector>
#include <complex>

namespace chlab {

/// Evaluation requested at a pole of a closed-form expression.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A bifurcation value of alpha where a closed-form landmark does not exist
/// (denominator vanishes, operator degenerates, free critical point at infinity...).
class DegenerateParameter : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised by the polynomial solver; carries the best iterate set.
class NoConvergence : public std::runtime_error {
public:
    NoConvergence(const std::string& what, std::vector<std::complex<double>> roots,
                  std::vector<double> residuals)
        : std::runtime_error(what), best_roots(std::move(roots)),
          residuals(std::move(residuals)) {}

    std::vector<std::complex<double>> best_roots;
    std::vector<double> residuals;
};

/// Seed did not converge to the requested root.
class BasinEscape : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace chlab
