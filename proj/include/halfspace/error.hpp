#pragma once

#include <stdexcept>
#include <string>

namespace halfspace {

/// Raised when a numerical contract is broken (unphysical spectrum, unstable
/// Hamiltonian, non-convergent ladder). Carries the owning module and the
/// invariant that failed so callers can report both.
class ContractViolation : public std::runtime_error {
 public:
  ContractViolation(std::string module, std::string invariant,
                    const std::string& detail)
      : std::runtime_error("[" + module + "] " + invariant + ": " + detail),
        module_(std::move(module)),
        invariant_(std::move(invariant)) {}

  const std::string& module() const noexcept { return module_; }
  const std::string& invariant() const noexcept { return invariant_; }

 private:
  std::string module_;
  std::string invariant_;
};

}  // namespace halfspace
