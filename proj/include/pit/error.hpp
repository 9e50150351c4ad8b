#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pit {

enum class ErrorCode {
  vertex_out_of_range,
  malformed_header,
  malformed_line,
  intra_class_edge,
  duplicate_edge,
  invalid_argument,
  budget_exhausted,
  construction_rejected,
  claim_refuted,
  precondition_failed,
  hypothesis_not_met,
  recipe_syntax,
  internal_assertion,
  io_failure,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class BudgetExhausted : public Error {
 public:
  explicit BudgetExhausted(std::uint64_t limit)
      : Error(ErrorCode::budget_exhausted,
              "budget exhausted after " + std::to_string(limit) + " search nodes"),
        limit_(limit) {}

  std::uint64_t limit() const noexcept { return limit_; }

 private:
  std::uint64_t limit_;
};

// Raised when a runtime check of a proven invariant fails. Always a bug.
class InternalAssertion : public Error {
 public:
  explicit InternalAssertion(const std::string& what)
      : Error(ErrorCode::internal_assertion, "internal assertion failed: " + what) {}
};

inline constexpr std::uint64_t kDefaultBudget = 200'000'000;

// Node counter shared by every exponential search in the library.
class Budget {
 public:
  explicit Budget(std::uint64_t limit = kDefaultBudget) : limit_(limit) {}

  void tick() {
    if (++used_ > limit_) throw BudgetExhausted(limit_);
  }
  std::uint64_t used() const noexcept { return used_; }
  std::uint64_t limit() const noexcept { return limit_; }

 private:
  std::uint64_t limit_;
  std::uint64_t used_ = 0;
};

}  // namespace pit
