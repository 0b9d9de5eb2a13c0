#pragma once

// Error taxonomy shared by every module. All failures surface as exceptions
// derived from edd::core::Error so callers can map them onto process exit
// codes in one place.

#include <stdexcept>
#include <string>

namespace edd::core {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Matrix arguments disagree with the required shape (or symmetry contract).
class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

// Model parameters fail their construction-time invariants.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

// A symmetric spectrum has a consecutive gap below the requested tolerance.
class DegenerateSpectrum : public Error {
 public:
  using Error::Error;
};

// A dense factorization did not converge (should not happen at desk scale).
class DecompositionFailure : public Error {
 public:
  using Error::Error;
};

// A combinatorial enumeration would exceed the configured item cap.
class Overflow : public Error {
 public:
  using Error::Error;
};

// The anchor violates the model's genericity predicate; the message names the
// predicate that failed.
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

// A point handed to an on-manifold operation is too far from the model.
class NotOnManifold : public Error {
 public:
  using Error::Error;
};

// The subspace pair handed to the adapted-frame builder is not nested.
class NotNested : public Error {
 public:
  using Error::Error;
};

// A basis matrix does not have full column rank.
class RankDeficient : public Error {
 public:
  using Error::Error;
};

// A closed-form minimizer was requested but the model parameters are not in
// the ordering that formula assumes.
class ParameterOrderViolation : public Error {
 public:
  using Error::Error;
};

// Descent hit its iteration budget; carries the final gradient residual.
class NoConvergence : public Error {
 public:
  NoConvergence(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_ = 0.0;
};

// File or JSON input could not be read/parsed.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace edd::core
