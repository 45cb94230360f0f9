#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace qrg {

using Complex = std::complex<double>;

/// Raised when a function does not satisfy the range or normalization
/// constraints its flags (or an operation's preconditions) demand.
class ConstraintError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

inline constexpr double kFlagTolerance = 1e-12;

struct FunctionFlags {
    bool disc_valued = false;      // |f(x)| <= 1
    bool two_disc_valued = false;  // |f(x)| <= 2
    bool mean_zero = false;        // (1/n) sum f = 0
};

/// A complex-valued function on a finite group, indexed by element.
/// Integrals use the uniform probability weight 1/n.
class GroupFunction {
public:
    GroupFunction() = default;
    /// Throws ConstraintError if a set flag does not hold.
    explicit GroupFunction(std::vector<Complex> values, FunctionFlags flags = {});

    static GroupFunction constant(std::size_t n, Complex c);
    static GroupFunction zero(std::size_t n) { return constant(n, 0.0); }

    std::size_t size() const { return values_.size(); }
    Complex operator[](std::size_t x) const { return values_[x]; }
    std::span<const Complex> values() const { return values_; }
    const FunctionFlags& flags() const { return flags_; }

    Complex mean() const;
    double l2_norm() const;
    double sup_norm() const;

    /// Re-tags with new flags, verifying them.
    GroupFunction with_flags(FunctionFlags flags) const { return GroupFunction(values_, flags); }
    /// Flags that actually hold, detected at the standard tolerance.
    FunctionFlags detected_flags() const;

private:
    std::vector<Complex> values_;
    FunctionFlags flags_;
};

/// <a, b> = (1/n) sum a(x) conj(b(x))
Complex inner(const GroupFunction& a, const GroupFunction& b);

GroupFunction operator+(const GroupFunction& a, const GroupFunction& b);
GroupFunction operator-(const GroupFunction& a, const GroupFunction& b);
GroupFunction operator*(Complex s, const GroupFunction& a);
/// Pointwise complex conjugate.
GroupFunction conj(const GroupFunction& a);

/// FNV-1a over the raw value bytes; identifies inputs in reports.
std::uint64_t digest(std::span<const Complex> values, std::uint64_t h = 0xcbf29ce484222325ULL);

}  // namespace qrg
