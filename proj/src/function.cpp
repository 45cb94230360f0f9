#include "qrg/function.hpp"

#include <cmath>
#include <cstring>
#include <string>

namespace qrg {

GroupFunction::GroupFunction(std::vector<Complex> values, FunctionFlags flags)
    : values_(std::move(values)), flags_(flags) {
    if (values_.empty()) throw ConstraintError("function on an empty set");
    if (flags_.disc_valued || flags_.two_disc_valued) {
        const double radius = flags_.disc_valued ? 1.0 : 2.0;
        for (std::size_t x = 0; x < values_.size(); ++x)
            if (std::abs(values_[x]) > radius + kFlagTolerance)
                throw ConstraintError("value at element " + std::to_string(x) + " has modulus " +
                                      std::to_string(std::abs(values_[x])) + " > " + std::to_string(radius));
    }
    if (flags_.mean_zero && std::abs(mean()) > kFlagTolerance)
        throw ConstraintError("mean-zero flag set but |mean| = " + std::to_string(std::abs(mean())));
}

GroupFunction GroupFunction::constant(std::size_t n, Complex c) {
    FunctionFlags flags;
    flags.disc_valued = std::abs(c) <= 1.0;
    flags.two_disc_valued = std::abs(c) <= 2.0;
    flags.mean_zero = c == Complex{};
    return GroupFunction(std::vector<Complex>(n, c), flags);
}

Complex GroupFunction::mean() const {
    Complex s{};
    for (auto v : values_) s += v;
    return s / static_cast<double>(values_.size());
}

double GroupFunction::l2_norm() const {
    double s = 0;
    for (auto v : values_) s += std::norm(v);
    return std::sqrt(s / static_cast<double>(values_.size()));
}

double GroupFunction::sup_norm() const {
    double m = 0;
    for (auto v : values_) m = std::max(m, std::abs(v));
    return m;
}

FunctionFlags GroupFunction::detected_flags() const {
    const double sup = sup_norm();
    return {sup <= 1.0 + kFlagTolerance, sup <= 2.0 + kFlagTolerance, std::abs(mean()) <= kFlagTolerance};
}

Complex inner(const GroupFunction& a, const GroupFunction& b) {
    if (a.size() != b.size()) throw ConstraintError("inner product of functions on different groups");
    Complex s{};
    for (std::size_t x = 0; x < a.size(); ++x) s += a[x] * std::conj(b[x]);
    return s / static_cast<double>(a.size());
}

namespace {
template <class Op>
GroupFunction zip(const GroupFunction& a, const GroupFunction& b, Op op) {
    if (a.size() != b.size()) throw ConstraintError("size mismatch");
    std::vector<Complex> out(a.size());
    for (std::size_t x = 0; x < a.size(); ++x) out[x] = op(a[x], b[x]);
    return GroupFunction(std::move(out));
}
}  // namespace

GroupFunction operator+(const GroupFunction& a, const GroupFunction& b) {
    return zip(a, b, [](Complex p, Complex q) { return p + q; });
}
GroupFunction operator-(const GroupFunction& a, const GroupFunction& b) {
    return zip(a, b, [](Complex p, Complex q) { return p - q; });
}
GroupFunction operator*(Complex s, const GroupFunction& a) {
    std::vector<Complex> out(a.values().begin(), a.values().end());
    for (auto& v : out) v *= s;
    return GroupFunction(std::move(out));
}
GroupFunction conj(const GroupFunction& a) {
    std::vector<Complex> out(a.size());
    for (std::size_t x = 0; x < a.size(); ++x) out[x] = std::conj(a[x]);
    return GroupFunction(std::move(out));
}

std::uint64_t digest(std::span<const Complex> values, std::uint64_t h) {
    for (const auto& v : values) {
        double parts[2] = {v.real(), v.imag()};
        unsigned char bytes[sizeof parts];
        std::memcpy(bytes, parts, sizeof parts);
        for (unsigned char b : bytes) {
            h ^= b;
            h *= 0x100000001b3ULL;
        }
    }
    return h;
}

}  // namespace qrg
