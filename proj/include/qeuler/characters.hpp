#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "qeuler/cyclotomic.hpp"
#include "qeuler/numtheory.hpp"

namespace qeuler {

/// Dirichlet character with odd modulus d, stored as an explicit value table
/// (index a gives chi(a mod d)) so evaluation inside nested sums is O(1).
/// "Conductor" is treated as "modulus": nothing here depends on primitivity.
/// Immutable after validated construction.
class DirichletChar {
public:
    static constexpr unsigned kMaxModulus = 99;
    static constexpr std::size_t kMaxPrimePowerFactors = 3;

    static DirichletChar trivial(unsigned d) {
        check_modulus(d);
        std::vector<Cyc> vals(d == 1 ? 1 : d);
        for (unsigned a = 0; a < vals.size(); ++a)
            vals[a] = std::gcd(a, d) == 1 ? Cyc(1) : Cyc(0);
        if (d == 1) vals[0] = Cyc(1);
        return DirichletChar(d, std::move(vals), "trivial");
    }

    /// Legendre-symbol character mod an odd prime.
    static DirichletChar quadratic(unsigned d) {
        check_modulus(d);
        if (!is_prime(d)) throw std::invalid_argument("DirichletChar::quadratic: modulus must be an odd prime");
        std::vector<bool> is_square(d, false);
        for (unsigned a = 1; a < d; ++a) is_square[static_cast<std::uint64_t>(a) * a % d] = true;
        std::vector<Cyc> vals(d);
        for (unsigned a = 1; a < d; ++a) vals[a] = is_square[a] ? Cyc(1) : Cyc(-1);
        return DirichletChar(d, std::move(vals), "quadratic");
    }

    /// All phi(d) characters mod d, built by CRT over the prime-power factors
    /// with primitive-root discrete logs. Each result is validated.
    static std::vector<DirichletChar> enumerate(unsigned d) {
        check_modulus(d);
        if (d == 1) return {trivial(1)};
        auto fac = factor_prime_powers(d);
        if (fac.size() > kMaxPrimePowerFactors)
            throw std::invalid_argument("DirichletChar::enumerate: too many prime-power factors");

        struct Component {
            unsigned pe;
            unsigned phi;
            std::vector<long> index;  // discrete log of each unit, -1 for non-units
        };
        std::vector<Component> comps;
        for (auto [p, pe] : fac) {
            Component c;
            c.pe = static_cast<unsigned>(pe);
            c.phi = static_cast<unsigned>(euler_phi(pe));
            c.index.assign(c.pe, -1);
            std::uint64_t g = primitive_root(pe), acc = 1;
            for (unsigned t = 0; t < c.phi; ++t) {
                c.index[static_cast<std::size_t>(acc)] = t;
                acc = acc * g % pe;
            }
            comps.push_back(std::move(c));
        }

        std::vector<DirichletChar> out;
        std::vector<unsigned> j(comps.size(), 0);
        unsigned count = 0;
        while (true) {
            // Character order: lcm over components of phi_i / gcd(j_i, phi_i).
            unsigned order = 1;
            std::vector<unsigned> comp_order(comps.size()), j_red(comps.size());
            for (std::size_t i = 0; i < comps.size(); ++i) {
                unsigned g = std::gcd(j[i], comps[i].phi);
                comp_order[i] = comps[i].phi / g;
                j_red[i] = j[i] / g;
                order = static_cast<unsigned>(std::lcm(order, comp_order[i]));
            }
            std::vector<Cyc> vals(d);
            for (unsigned a = 0; a < d; ++a) {
                if (std::gcd(a, d) != 1) continue;
                unsigned e = 0;
                for (std::size_t i = 0; i < comps.size(); ++i) {
                    long t = comps[i].index[a % comps[i].pe];
                    unsigned local = static_cast<unsigned>(
                        (static_cast<std::uint64_t>(j_red[i]) * static_cast<std::uint64_t>(t)) % comp_order[i]);
                    e = (e + local * (order / comp_order[i])) % order;
                }
                vals[a] = Cyc::root_of_unity(order, static_cast<long>(e));
            }
            out.emplace_back(DirichletChar(d, std::move(vals), "chi" + std::to_string(d) + "." + std::to_string(count)));
            ++count;
            // Odometer over the exponent tuple.
            std::size_t pos = 0;
            while (pos < comps.size() && ++j[pos] == comps[pos].phi) j[pos++] = 0;
            if (pos == comps.size()) break;
        }
        return out;
    }

    unsigned modulus() const { return d_; }
    unsigned order() const { return order_; }
    bool is_real() const { return real_; }
    bool is_trivial() const { return order_ == 1; }
    const std::string& label() const { return label_; }
    const std::vector<Cyc>& values() const { return values_; }

    /// chi(n mod d), exact.
    const Cyc& operator()(long n) const {
        long r = n % static_cast<long>(d_);
        if (r < 0) r += d_;
        return values_[static_cast<std::size_t>(r)];
    }

    /// Value in {-1, 0, 1}; only for real characters.
    int sign(long n) const {
        if (!real_) throw std::domain_error("DirichletChar::sign: character is not real-valued");
        const Cyc& v = (*this)(n);
        if (v.is_zero()) return 0;
        return v.rat_value() == 1 ? 1 : -1;
    }

    friend bool operator==(const DirichletChar& a, const DirichletChar& b) {
        return a.d_ == b.d_ && a.values_ == b.values_;
    }

private:
    DirichletChar(unsigned d, std::vector<Cyc> values, std::string label)
        : d_(d), values_(std::move(values)), label_(std::move(label)) {
        validate();
    }

    static void check_modulus(unsigned d) {
        if (d == 0 || d % 2 == 0) throw std::invalid_argument("DirichletChar: modulus must be odd and positive");
        if (d > kMaxModulus) throw std::invalid_argument("DirichletChar: modulus exceeds the supported bound");
    }

    void validate() {
        check_modulus(d_);
        if (values_.size() != (d_ == 1 ? 1u : d_)) throw std::logic_error("DirichletChar: bad value-table size");
        for (unsigned a = 0; a < values_.size(); ++a) {
            bool unit = std::gcd(a, d_) == 1;
            if (unit == values_[a].is_zero())
                throw std::logic_error("DirichletChar: support must be exactly the units");
        }
        if ((*this)(1) != Cyc(1)) throw std::logic_error("DirichletChar: chi(1) must be 1");
        for (unsigned a = 0; a < d_; ++a)
            for (unsigned b = a; b < d_; ++b)
                if ((*this)(static_cast<long>(a) * b) != (*this)(a) * (*this)(b))
                    throw std::logic_error("DirichletChar: multiplicativity failed");
        // Order: lcm of the orders of the unit values.
        order_ = 1;
        unsigned phi = static_cast<unsigned>(euler_phi(d_));
        for (const Cyc& v : values_) {
            if (v.is_zero()) continue;
            Cyc p = v;
            unsigned r = 1;
            while (p != Cyc(1)) {
                p = p * v;
                if (++r > phi) throw std::logic_error("DirichletChar: value is not a root of unity of order | phi(d)");
            }
            order_ = static_cast<unsigned>(std::lcm(order_, r));
        }
        if (phi % order_ != 0) throw std::logic_error("DirichletChar: order must divide phi(d)");
        real_ = true;
        for (const Cyc& v : values_)
            if (!v.is_rational()) {
                real_ = false;
                break;
            }
    }

    unsigned d_;
    std::vector<Cyc> values_;
    std::string label_;
    unsigned order_ = 1;
    bool real_ = true;
};

}  // namespace qeuler
