#pragma once

#include <stdexcept>
#include <string>

namespace spbw {

// Base type for every error thrown by the kernel.
struct kernel_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotAUnit : kernel_error {
  explicit NotAUnit(const std::string& m) : kernel_error("NotAUnit: " + m) {}
};
struct BackendMismatch : kernel_error {
  explicit BackendMismatch(const std::string& m) : kernel_error("BackendMismatch: " + m) {}
};
struct NotAPrime : kernel_error {
  explicit NotAPrime(const std::string& m) : kernel_error("NotAPrime: " + m) {}
};
struct InvalidAction : kernel_error {
  explicit InvalidAction(const std::string& m) : kernel_error("InvalidAction: " + m) {}
};
struct UnitLogUnsupported : kernel_error {
  explicit UnitLogUnsupported(const std::string& m) : kernel_error("UnitLogUnsupported: " + m) {}
};
struct ZeroPolynomial : kernel_error {
  explicit ZeroPolynomial(const std::string& m) : kernel_error("ZeroPolynomial: " + m) {}
};
struct InvalidExponent : kernel_error {
  explicit InvalidExponent(const std::string& m) : kernel_error("InvalidExponent: " + m) {}
};
struct InvalidPresentation : kernel_error {
  explicit InvalidPresentation(const std::string& m) : kernel_error("InvalidPresentation: " + m) {}
};
struct LaurentUnsupported : kernel_error {
  explicit LaurentUnsupported(const std::string& m) : kernel_error("LaurentUnsupported: " + m) {}
};
struct NotQuasiCommutative : kernel_error {
  explicit NotQuasiCommutative(const std::string& m) : kernel_error("NotQuasiCommutative: " + m) {}
};
struct NotValidated : kernel_error {
  explicit NotValidated(const std::string& m) : kernel_error("NotValidated: " + m) {}
};
struct NotFiltered : kernel_error {
  explicit NotFiltered(const std::string& m) : kernel_error("NotFiltered: " + m) {}
};
struct NotBijective : kernel_error {
  explicit NotBijective(const std::string& m) : kernel_error("NotBijective: " + m) {}
};
struct NotLaurent : kernel_error {
  explicit NotLaurent(const std::string& m) : kernel_error("NotLaurent: " + m) {}
};
struct NotADomain : kernel_error {
  explicit NotADomain(const std::string& m) : kernel_error("NotADomain: " + m) {}
};
struct IndependenceFails : kernel_error {
  explicit IndependenceFails(const std::string& m) : kernel_error("IndependenceFails: " + m) {}
};
struct NotQuantumSpace : kernel_error {
  explicit NotQuantumSpace(const std::string& m) : kernel_error("NotQuantumSpace: " + m) {}
};
struct NonUnitScalar : kernel_error {
  explicit NonUnitScalar(const std::string& m) : kernel_error("NonUnitScalar: " + m) {}
};
struct ParseError : kernel_error {
  explicit ParseError(const std::string& m) : kernel_error("ParseError: " + m) {}
};
struct SchemaError : kernel_error {
  explicit SchemaError(const std::string& m) : kernel_error("SchemaError: " + m) {}
};

}  // namespace spbw
