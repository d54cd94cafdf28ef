#ifndef ALTRANK_FIELD_HPP
#define ALTRANK_FIELD_HPP

// Exact scalar arithmetic over prime fields F_p (p < 2^31) and the rationals.
//
// A field is a small value type that owns no element storage; elements are
// plain values of Field::value_type and every operation goes through the
// field object:
//
//   PrimeField f5{5};
//   auto x = f5.inv(2);          // 3
//   RationalField q;
//   auto y = q.inv(q.parse("3/4"));  // 4/3

#include <compare>
#include <concepts>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

namespace altrank {

/// Raised on x / 0 and on inverting zero.
class division_by_zero : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised when an operation's documented precondition does not hold.
class precondition_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when an exhaustive computation would exceed its configured budget.
class budget_exceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Deterministic primality test by trial division (sufficient below 2^31).
constexpr bool is_prime(std::uint64_t n) noexcept
{
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

class PrimeField {
public:
    using value_type = std::uint32_t;

    explicit PrimeField(std::uint32_t p) : p_(p)
    {
        if (p < 2 || p >= (1u << 31) || !is_prime(p))
            throw precondition_error("PrimeField: modulus " + std::to_string(p) +
                                     " is not a prime in [2, 2^31)");
    }

    std::uint32_t characteristic() const noexcept { return p_; }
    std::optional<std::uint64_t> cardinality() const noexcept { return p_; }
    bool is_prime_field() const noexcept { return true; }

    value_type zero() const noexcept { return 0; }
    value_type one() const noexcept { return 1; }

    value_type from_int(std::int64_t v) const noexcept
    {
        auto m = v % static_cast<std::int64_t>(p_);
        if (m < 0) m += p_;
        return static_cast<value_type>(m);
    }

    /// Element with index i in the canonical order 0, 1, ..., p-1.
    value_type element(std::uint64_t i) const noexcept { return static_cast<value_type>(i); }

    value_type add(value_type a, value_type b) const noexcept
    {
        std::uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    value_type sub(value_type a, value_type b) const noexcept { return a >= b ? a - b : a + p_ - b; }
    value_type neg(value_type a) const noexcept { return a == 0 ? 0 : p_ - a; }
    value_type mul(value_type a, value_type b) const noexcept
    {
        return static_cast<value_type>(static_cast<std::uint64_t>(a) * b % p_);
    }

    value_type inv(value_type a) const
    {
        if (a == 0) throw division_by_zero("inverse of zero in F_" + std::to_string(p_));
        // extended Euclid on (a, p)
        std::int64_t t = 0, new_t = 1;
        std::int64_t r = p_, new_r = a;
        while (new_r != 0) {
            std::int64_t q = r / new_r;
            t -= q * new_t;
            std::swap(t, new_t);
            r -= q * new_r;
            std::swap(r, new_r);
        }
        if (t < 0) t += p_;
        return static_cast<value_type>(t);
    }

    value_type div(value_type a, value_type b) const { return mul(a, inv(b)); }
    bool is_zero(value_type a) const noexcept { return a == 0; }
    bool is_one(value_type a) const noexcept { return a == 1; }

    std::string to_string(value_type a) const { return std::to_string(a); }

    /// Accepts any decimal integer (reduced mod p) or "num/den".
    value_type parse(std::string_view text) const
    {
        auto slash = text.find('/');
        if (slash != std::string_view::npos)
            return div(parse(text.substr(0, slash)), parse(text.substr(slash + 1)));
        mpz_class z;
        if (text.empty() || z.set_str(std::string(text), 10) != 0)
            throw precondition_error("invalid F_p element '" + std::string(text) + "'");
        mpz_class m = z % p_;
        if (m < 0) m += p_;
        return static_cast<value_type>(m.get_ui());
    }

    std::string name() const { return "Fp:" + std::to_string(p_); }

    friend bool operator==(const PrimeField&, const PrimeField&) = default;

private:
    std::uint32_t p_;
};

class RationalField {
public:
    using value_type = mpq_class;

    std::uint32_t characteristic() const noexcept { return 0; }
    std::optional<std::uint64_t> cardinality() const noexcept { return std::nullopt; }
    bool is_prime_field() const noexcept { return false; }

    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    value_type from_int(std::int64_t v) const
    {
        mpz_class z;
        mpz_set_si(z.get_mpz_t(), static_cast<long>(v));
        return mpq_class(z);
    }

    value_type add(const value_type& a, const value_type& b) const { return a + b; }
    value_type sub(const value_type& a, const value_type& b) const { return a - b; }
    value_type neg(const value_type& a) const { return -a; }
    value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    value_type inv(const value_type& a) const
    {
        if (sgn(a) == 0) throw division_by_zero("inverse of zero in Q");
        return 1 / a;
    }
    value_type div(const value_type& a, const value_type& b) const { return mul(a, inv(b)); }
    bool is_zero(const value_type& a) const { return sgn(a) == 0; }
    bool is_one(const value_type& a) const { return a == 1; }

    std::string to_string(const value_type& a) const { return a.get_str(10); }

    value_type parse(std::string_view text) const
    {
        mpq_class q;
        if (text.empty() || q.set_str(std::string(text), 10) != 0 || sgn(q.get_den()) == 0)
            throw precondition_error("invalid rational '" + std::string(text) + "'");
        q.canonicalize();
        return q;
    }

    std::string name() const { return "Q"; }

    friend bool operator==(const RationalField&, const RationalField&) = default;
};

template <class F>
concept Field = requires(const F f, const typename F::value_type a, std::int64_t i) {
    typename F::value_type;
    { f.zero() } -> std::convertible_to<typename F::value_type>;
    { f.one() } -> std::convertible_to<typename F::value_type>;
    { f.add(a, a) } -> std::convertible_to<typename F::value_type>;
    { f.sub(a, a) } -> std::convertible_to<typename F::value_type>;
    { f.mul(a, a) } -> std::convertible_to<typename F::value_type>;
    { f.neg(a) } -> std::convertible_to<typename F::value_type>;
    { f.inv(a) } -> std::convertible_to<typename F::value_type>;
    { f.is_zero(a) } -> std::convertible_to<bool>;
    { f.from_int(i) } -> std::convertible_to<typename F::value_type>;
    { f.to_string(a) } -> std::convertible_to<std::string>;
    { f.name() } -> std::convertible_to<std::string>;
};

static_assert(Field<PrimeField>);
static_assert(Field<RationalField>);

/// Runtime field descriptor, as written in files and on the command line.
using FieldCtx = std::variant<PrimeField, RationalField>;

/// Parses "Fp:<p>" or "Q".
inline FieldCtx parse_field(std::string_view text)
{
    if (text == "Q") return RationalField{};
    if (text.starts_with("Fp:")) {
        auto digits = text.substr(3);
        std::uint64_t p = 0;
        if (digits.empty() || digits.size() > 10)
            throw precondition_error("invalid field '" + std::string(text) + "'");
        for (char c : digits) {
            if (c < '0' || c > '9')
                throw precondition_error("invalid field '" + std::string(text) + "'");
            p = p * 10 + static_cast<std::uint64_t>(c - '0');
        }
        if (p >= (1ull << 31)) throw precondition_error("prime modulus must be < 2^31");
        return PrimeField(static_cast<std::uint32_t>(p));
    }
    throw precondition_error("invalid field '" + std::string(text) + "' (expected Fp:<p> or Q)");
}

inline std::string field_name(const FieldCtx& ctx)
{
    return std::visit([](const auto& f) { return f.name(); }, ctx);
}

/// True iff |F| >= m; always true for the rationals.
template <Field F>
bool cardinality_at_least(const F& f, std::uint64_t m)
{
    auto c = f.cardinality();
    return !c || *c >= m;
}

inline bool cardinality_at_least(const FieldCtx& ctx, std::uint64_t m)
{
    return std::visit([m](const auto& f) { return cardinality_at_least(f, m); }, ctx);
}

template <Field F>
typename F::value_type field_inv(const F& f, const typename F::value_type& x)
{
    return f.inv(x);
}

} // namespace altrank

#endif // ALTRANK_FIELD_HPP
