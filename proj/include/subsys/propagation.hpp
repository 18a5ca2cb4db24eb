#pragma once
// Rule engine for deriving new subsystem codes from old ones: dimension
// trading between logical and gauge subsystems, lengthening, shortening,
// and two-code combination.  Rules come in two tiers:
//
//   constructive - transform a concrete gauge code C <= F_q^(2n) and return
//                  the new code next to its descriptor, so every claim can be
//                  re-derived through from_additive;
//   parametric   - transform descriptors only, citing a proved existence
//                  statement; distances that the statement only bounds are
//                  emitted as lower bounds, never upgraded.
//
// Rule ids: thm8, thm9, thm10, thm11, cor12, thm15, thm16, thm17, thm18,
// thm19 (the tags the CLI accepts; see rule_tier for the tier of each).

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "subsys/subsystem.hpp"
#include "subsys/symplectic.hpp"

namespace subsys {

enum class RuleTier { constructive, parametric };

inline const char* tier_name(RuleTier t) {
    return t == RuleTier::constructive ? "constructive" : "parametric";
}

// Tier lookup for the documented rule ids.
inline RuleTier rule_tier(const std::string& id) {
    if (id == "thm8" || id == "thm10" || id == "thm16") return RuleTier::constructive;
    if (id == "thm9" || id == "thm11" || id == "cor12" || id == "thm15" || id == "thm17" ||
        id == "thm18" || id == "thm19")
        return RuleTier::parametric;
    throw std::invalid_argument("rule_tier(): unknown rule id " + id);
}

// One application of a rule: which rule, what went in, what came out.
struct RuleApplication {
    std::string rule_id;
    std::vector<std::string> inputs;  // descriptor strings of the inputs
    SubsystemDescriptor output;
    RuleTier tier;
};

inline RuleApplication make_application(const std::string& rule_id,
                                        const std::vector<SubsystemDescriptor>& inputs,
                                        SubsystemDescriptor output) {
    RuleApplication ra{rule_id, {}, std::move(output), rule_tier(rule_id)};
    ra.inputs.reserve(inputs.size());
    for (const auto& in : inputs) ra.inputs.push_back(in.str());
    return ra;
}

// A constructive result: the transformed gauge code with its descriptor.
struct DerivedCode {
    AdditiveCode code;
    SubsystemDescriptor desc;
};

namespace detail {

// The descriptor must describe the given gauge code: same ambient and
// dim_p C = n*m - exp(K) + exp(R), the exponent identity of the engine.
inline void check_described(const AdditiveCode& c, const SubsystemDescriptor& desc,
                            const std::string& who) {
    const FieldSpec& f = c.field();
    if (desc.q() != f.q() || desc.n() != std::uint32_t(c.n()))
        throw std::invalid_argument(who + ": descriptor ambient [[n]]_q does not match the code");
    const long long want =
        (long long)desc.n() * f.m() - (long long)desc.K().exp + (long long)desc.R().exp;
    if (want != c.dim_p())
        throw std::invalid_argument(who + ": descriptor (K, R) does not match dim |C| = p^" +
                                    std::to_string(c.dim_p()));
}

/*
 * Lowest-index hyperbolic pair (u, v) extending C: u is the first basis
 * vector of C^perp_s outside C, v the first partner with <u|v>_s != 0,
 * scaled so the pairing is 1.  Both lie in C^perp_s - C: the form on
 * C^perp_s has radical D = C^perp_s cap C, and u is outside it, so a
 * partner exists whenever K > 1.
 */
inline std::pair<SympVector, SympVector> hyperbolic_extension(const AdditiveCode& c) {
    const FieldSpec& fp = c.prime_field();
    AdditiveCode dual = symp_dual(c);
    auto dg = dual.gens();
    for (const auto& u : dg) {
        if (c.contains(u)) continue;
        for (const auto& w : dg) {
            std::uint8_t cv = tsp(u, w);
            if (cv == 0) continue;
            return {u, symp_scale(w, fp.inv(felt(cv)))};
        }
        throw std::logic_error(
            "hyperbolic_extension(): dual vector outside C has no symplectic partner");
    }
    throw std::logic_error("hyperbolic_extension(): C^perp_s - C is empty");
}

inline long long radical_dim(const SubsystemDescriptor& desc) {
    const FieldSpec& f = field_of_order(desc.q());
    return (long long)desc.n() * f.m() - (long long)desc.K().exp - (long long)desc.R().exp;
}

// X' = {(a alpha | b 0) : (a|b) in X, alpha in GF(q)}: append one position
// whose a-half is free and whose b-half is zero.  Satisfies |X'| = q|X| and
// (X^perp_s)' = (X')^perp_s.
inline AdditiveCode append_free_position(const AdditiveCode& c) {
    const FieldSpec& f = c.field();
    const int n = c.n();
    std::vector<SympVector> gens;
    for (const auto& g : c.gens()) {
        std::vector<felt> a = g.a, b = g.b;
        a.push_back(0);
        b.push_back(0);
        gens.emplace_back(f, std::move(a), std::move(b));
    }
    std::vector<std::uint8_t> digits(f.m(), 0);
    for (std::uint32_t j = 0; j < f.m(); ++j) {
        std::fill(digits.begin(), digits.end(), 0);
        digits[j] = 1;
        std::vector<felt> a(std::size_t(n) + 1, 0), b(std::size_t(n) + 1, 0);
        a[std::size_t(n)] = f.from_digits(digits.data());
        gens.emplace_back(f, std::move(a), std::move(b));
    }
    return AdditiveCode::from_vectors(f, n + 1, gens);
}

}  // namespace detail

/*
 * Rule thm8 (constructive): trade one prime factor of K for gauge.  Adjoins
 * a hyperbolic pair from C^perp_s - C, giving ((n, K/p, pR, d_m))_q with
 * d_m >= d and swt(C_m) >= min{d, d'}.  When K = p the result is the
 * degenerate case C_m = D^perp_s, so the step needs an established pure
 * input and then keeps d exactly.
 */
inline DerivedCode shrink_k(const AdditiveCode& c, const SubsystemDescriptor& desc) {
    detail::check_described(c, desc, "shrink_k()");
    const FieldSpec& f = c.field();
    if (desc.K().is_one())
        throw std::invalid_argument("shrink_k(): K = 1 leaves no logical dimension to trade");
    const bool to_one = (desc.K().exp == 1);
    if (to_one && !desc.is_pure())
        throw std::invalid_argument(
            "shrink_k(): the K = p step needs an established pure input");

    auto [u, v] = detail::hyperbolic_extension(c);
    auto gens = c.gens();
    gens.push_back(u);
    gens.push_back(v);
    AdditiveCode cm = AdditiveCode::from_vectors(f, c.n(), gens);
    if (cm.dim_p() != c.dim_p() + 2)
        throw std::logic_error("shrink_k(): adjoined pair failed to add two dimensions");
    if (cm.intersect(symp_dual(cm)).dim_p() != detail::radical_dim(desc))
        throw std::logic_error("shrink_k(): radical changed under the hyperbolic extension");

    PrimePower K{f.p(), desc.K().exp - 1};
    PrimePower R{f.p(), desc.R().exp + 1};
    Distance d = to_one ? desc.d() : Distance::at_least(desc.d().value);
    std::optional<long long> pure_to;
    Purity purity = Purity::unknown;
    if (to_one) {
        if (desc.d().is_exact()) pure_to = desc.d().value;
        purity = Purity::pure;
    } else if (desc.pure_to()) {
        pure_to = std::min(desc.d().value, *desc.pure_to());
    }
    SubsystemDescriptor out(f.q(), desc.n(), K, R, d, pure_to, purity, cm.is_gfq_linear(),
                            desc.provenance());
    return {std::move(cm),
            out.with_provenance("rule thm8: " + desc.str() + " -> " + out.str())};
}

/*
 * Rule thm10 (constructive): trade one prime factor of R back into K on a
 * pure code.  Removes one hyperbolic pair of the Gram-Schmidt decomposition;
 * purity of the input pins the distance exactly, so d is carried unchanged.
 * Impure inputs are rejected: the enlarged logical space would see the low
 * weight gauge elements as errors.
 */
inline DerivedCode grow_k(const AdditiveCode& c, const SubsystemDescriptor& desc) {
    detail::check_described(c, desc, "grow_k()");
    const FieldSpec& f = c.field();
    if (desc.R().is_one())
        throw std::invalid_argument("grow_k(): stabilizer input has no gauge pair to remove");
    if (!desc.is_pure())
        throw std::invalid_argument("grow_k(): purity prerequisite not established");

    HyperbolicBasis hb = symp_gram_schmidt(c);
    if (hb.r() == 0)
        throw std::logic_error("grow_k(): descriptor reports gauge pairs but none decompose");
    std::vector<SympVector> gens = hb.singles;
    for (std::size_t i = 1; i < hb.pairs.size(); ++i) {
        gens.push_back(hb.pairs[i].first);
        gens.push_back(hb.pairs[i].second);
    }
    AdditiveCode cs = AdditiveCode::from_vectors(f, c.n(), gens);
    if (cs.dim_p() != c.dim_p() - 2)
        throw std::logic_error("grow_k(): removing a pair must drop two dimensions");
    if (cs.dim_p() > 0 && cs.intersect(symp_dual(cs)).dim_p() != detail::radical_dim(desc))
        throw std::logic_error("grow_k(): radical changed under pair removal");

    PrimePower K{f.p(), desc.K().exp + 1};
    PrimePower R{f.p(), desc.R().exp - 1};
    SubsystemDescriptor out(f.q(), desc.n(), K, R, desc.d(), desc.pure_to(), Purity::pure,
                            cs.is_gfq_linear(), desc.provenance());
    return {std::move(cs),
            out.with_provenance("rule thm10: " + desc.str() + " -> " + out.str())};
}

/*
 * Rule thm16 (constructive): lengthen by one position.  The new gauge code
 * is C' = {(a alpha | b 0) : (a|b) in C, alpha in GF(q)}, so |C'| = q|C|,
 * |D'| = q|D|, K and R are preserved, d' >= d, and C' contains the weight-1
 * generators (0 alpha | 0 0), making the result pure to exactly 1.
 */
inline DerivedCode extend_n(const AdditiveCode& c, const SubsystemDescriptor& desc) {
    detail::check_described(c, desc, "extend_n()");
    const FieldSpec& f = c.field();
    if (desc.K().is_one())
        throw std::invalid_argument("extend_n(): needs K > 1");

    AdditiveCode ce = detail::append_free_position(c);
    if (ce.dim_p() != c.dim_p() + int(f.m()))
        throw std::logic_error("extend_n(): extension must multiply |C| by q");
    if (ce.intersect(symp_dual(ce)).dim_p() != detail::radical_dim(desc) + int(f.m()))
        throw std::logic_error("extend_n(): extension must multiply |D| by q");

    Distance d = Distance::at_least(desc.d().value);
    SubsystemDescriptor out(f.q(), desc.n() + 1, desc.K(), desc.R(), d, 1,
                            classify_purity(1, d), ce.is_gfq_linear(), desc.provenance());
    return {std::move(ce),
            out.with_provenance("rule thm16: " + desc.str() + " -> " + out.str())};
}

/*
 * Rule thm9 (parametric): the GF(q)-linear bracket form of the K-shrink,
 * [[n,k,r,d]] -> [[n,k-1,r+1,>=d]] pure to min{d,d'}.  The k = 1 step needs
 * an established pure input and then keeps d exactly.
 */
inline SubsystemDescriptor shrink_k_linear(const SubsystemDescriptor& desc) {
    if (!desc.is_linear())
        throw std::invalid_argument("shrink_k_linear(): input is not GF(q)-linear");
    if (!desc.has_brackets())
        throw std::invalid_argument("shrink_k_linear(): input has no q-ary bracket form");
    const long long k = *desc.k(), r = *desc.r();
    if (k < 1)
        throw std::invalid_argument("shrink_k_linear(): k = 0 leaves nothing to trade");
    const bool to_zero = (k == 1);
    if (to_zero && !desc.is_pure())
        throw std::invalid_argument(
            "shrink_k_linear(): the k = 1 step needs an established pure input");
    Distance d = to_zero ? desc.d() : Distance::at_least(desc.d().value);
    std::optional<long long> pure_to;
    Purity purity = Purity::unknown;
    if (to_zero) {
        if (desc.d().is_exact()) pure_to = desc.d().value;
        purity = Purity::pure;
    } else if (desc.pure_to()) {
        pure_to = std::min(desc.d().value, *desc.pure_to());
    }
    auto out = SubsystemDescriptor::from_brackets(desc.q(), desc.n(), std::uint32_t(k - 1),
                                                  std::uint32_t(r + 1), d, pure_to, purity,
                                                  true, desc.provenance());
    return out.with_provenance("rule thm9: " + desc.str() + " -> " + out.str());
}

/*
 * Rule thm11 (parametric): on a pure GF(q)-linear code, trade one gauge
 * qudit back, [[n,k,r,d]] -> [[n,k+1,r-1,d]], purity and distance kept.
 */
inline SubsystemDescriptor grow_k_linear(const SubsystemDescriptor& desc) {
    if (!desc.is_linear())
        throw std::invalid_argument("grow_k_linear(): input is not GF(q)-linear");
    if (!desc.has_brackets())
        throw std::invalid_argument("grow_k_linear(): input has no q-ary bracket form");
    if (!desc.is_pure())
        throw std::invalid_argument("grow_k_linear(): purity prerequisite not established");
    const long long k = *desc.k(), r = *desc.r();
    if (r < 1)
        throw std::invalid_argument("grow_k_linear(): stabilizer input has no gauge to trade");
    auto out = SubsystemDescriptor::from_brackets(desc.q(), desc.n(), std::uint32_t(k + 1),
                                                  std::uint32_t(r - 1), desc.d(),
                                                  desc.pure_to(), Purity::pure, true,
                                                  desc.provenance());
    return out.with_provenance("rule thm11: " + desc.str() + " -> " + out.str());
}

/*
 * Rule thm15 (parametric): an MDS stabilizer code trades dimensions at
 * constant distance.  For a GF(q)-linear [[n,k,d]]_q with exact d meeting
 * the Singleton bound, every 0 <= r <= k gives a pure linear [[n,k-r,r,d]]_q
 * which is again MDS; the Singleton bound pinches d from both sides.
 */
inline SubsystemDescriptor mds_trade(const SubsystemDescriptor& desc, long long r_target) {
    if (!desc.is_linear() || !desc.has_brackets())
        throw std::invalid_argument("mds_trade(): needs a GF(q)-linear bracket descriptor");
    if (!desc.is_stabilizer())
        throw std::invalid_argument("mds_trade(): input must be a stabilizer code (r = 0)");
    if (!desc.d().is_exact())
        throw std::invalid_argument("mds_trade(): needs an exact distance");
    if (!singleton_check(desc).is_mds)
        throw std::invalid_argument("mds_trade(): input does not meet the Singleton bound");
    const long long k = *desc.k();
    if (r_target < 0 || r_target > k)
        throw std::invalid_argument("mds_trade(): gauge target outside [0, k]");
    auto out = SubsystemDescriptor::from_brackets(
        desc.q(), desc.n(), std::uint32_t(k - r_target), std::uint32_t(r_target), desc.d(),
        desc.d().value, Purity::pure, true, desc.provenance());
    return out.with_provenance("rule thm15: " + desc.str() + " -> " + out.str());
}

/*
 * Rule cor12 (parametric): iterated k-shrink on a stabilizer code,
 * [[n,k,d]] -> [[n,k-r,r,>=d]] pure to min{d,d'} for 0 <= r < k.  Inputs
 * that qualify for the MDS trade are routed there, keeping d exact.
 */
inline SubsystemDescriptor stabilizer_to_subsystem(const SubsystemDescriptor& desc,
                                                   long long r_target) {
    if (!desc.is_stabilizer())
        throw std::invalid_argument("stabilizer_to_subsystem(): input must have r = 0");
    if (!desc.has_brackets())
        throw std::invalid_argument(
            "stabilizer_to_subsystem(): input has no q-ary bracket form");
    const long long k = *desc.k();
    if (r_target < 0 || r_target >= k)
        throw std::invalid_argument("stabilizer_to_subsystem(): gauge target outside [0, k)");
    if (r_target == 0)
        return desc.with_provenance("rule cor12: identity at r = 0");
    if (desc.is_linear() && desc.d().is_exact() && singleton_check(desc).is_mds)
        return mds_trade(desc, r_target);
    Distance d = Distance::at_least(desc.d().value);
    std::optional<long long> pure_to;
    if (desc.pure_to()) pure_to = std::min(desc.d().value, *desc.pure_to());
    auto out = SubsystemDescriptor::from_brackets(
        desc.q(), desc.n(), std::uint32_t(k - r_target), std::uint32_t(r_target), d, pure_to,
        Purity::unknown, desc.is_linear(), desc.provenance());
    return out.with_provenance("rule cor12: " + desc.str() + " -> " + out.str());
}

/*
 * Rule cor12, converse direction (parametric): a pure subsystem code folds
 * its gauge subsystem back into the logical space, ((n,K,R,d)) ->
 * ((n,KR,1,d)) pure, distance kind preserved.
 */
inline SubsystemDescriptor subsystem_to_stabilizer(const SubsystemDescriptor& desc) {
    if (!desc.is_pure())
        throw std::invalid_argument("subsystem_to_stabilizer(): purity prerequisite");
    if (desc.R().is_one())
        return desc.with_provenance("rule cor12: identity at r = 0");
    const FieldSpec& f = field_of_order(desc.q());
    PrimePower K{f.p(), desc.K().exp + desc.R().exp};
    PrimePower R{f.p(), 0};
    SubsystemDescriptor out(desc.q(), desc.n(), K, R, desc.d(), desc.pure_to(), Purity::pure,
                            desc.is_linear(), desc.provenance());
    return out.with_provenance("rule cor12: " + desc.str() + " -> " + out.str());
}

/*
 * Rule thm17 (parametric): shorten a pure code by one position,
 * ((n,K,R,d)) -> ((n-1,qK,R,d-1)) pure, distance kind preserved.
 */
inline SubsystemDescriptor shorten(const SubsystemDescriptor& desc) {
    if (!desc.is_pure())
        throw std::invalid_argument("shorten(): purity prerequisite not established");
    if (desc.d().value < 2)
        throw std::invalid_argument("shorten(): needs d >= 2");
    if (desc.n() < 2)
        throw std::invalid_argument("shorten(): needs n >= 2");
    const FieldSpec& f = field_of_order(desc.q());
    PrimePower K{f.p(), desc.K().exp + f.m()};
    Distance d = desc.d().is_exact() ? Distance::exact(desc.d().value - 1)
                                     : Distance::at_least(desc.d().value - 1);
    SubsystemDescriptor out(desc.q(), desc.n() - 1, K, desc.R(), d, d.value, Purity::pure,
                            desc.is_linear(), desc.provenance());
    return out.with_provenance("rule thm17: " + desc.str() + " -> " + out.str());
}

namespace detail {

inline std::vector<std::string> merge_provenance(const SubsystemDescriptor& a,
                                                 const SubsystemDescriptor& b) {
    std::vector<std::string> prov = a.provenance();
    prov.insert(prov.end(), b.provenance().begin(), b.provenance().end());
    return prov;
}

}  // namespace detail

/*
 * Rule thm18 (parametric, binary): combine two pure binary codes on
 * disjoint blocks.  With k2 + r2 <= n1, every 0 <= r < k1 + r1 gives a
 * [[n1+n2-k2-r2, k1+r1-r, r, d]]_2 with d >= min{d1, d1+d2-k2-r2}.  The
 * purity of the outputs is not settled, so they are marked unknown.
 */
inline std::vector<SubsystemDescriptor> combine_disjoint(const SubsystemDescriptor& d1,
                                                         const SubsystemDescriptor& d2) {
    if (d1.q() != 2 || d2.q() != 2)
        throw std::invalid_argument("combine_disjoint(): both inputs must be binary");
    if (!d1.is_pure() || !d2.is_pure())
        throw std::invalid_argument("combine_disjoint(): purity prerequisite on both inputs");
    const long long k1 = *d1.k(), r1 = *d1.r(), k2 = *d2.k(), r2 = *d2.r();
    if (k2 + r2 > (long long)d1.n())
        throw std::invalid_argument("combine_disjoint(): needs k2 + r2 <= n1");
    const long long n_out = (long long)d1.n() + d2.n() - k2 - r2;
    const long long dv = std::max<long long>(
        1, std::min(d1.d().value, d1.d().value + d2.d().value - k2 - r2));
    auto prov = detail::merge_provenance(d1, d2);
    std::vector<SubsystemDescriptor> family;
    for (long long r = 0; r < k1 + r1; ++r) {
        auto out = SubsystemDescriptor::from_brackets(
            2, std::uint32_t(n_out), std::uint32_t(k1 + r1 - r), std::uint32_t(r),
            Distance::at_least(dv), std::nullopt, Purity::unknown,
            d1.is_linear() && d2.is_linear(), prov);
        family.push_back(out.with_provenance("rule thm18: " + d1.str() + " + " + d2.str() +
                                             " -> " + out.str()));
    }
    return family;
}

/*
 * Rule thm19 (parametric): combine two pure codes of the same length whose
 * gauge groups are nested, Q2 <= Q1; the caller asserts the nesting, it is
 * not recomputed at the parameter tier.  Every 0 <= r <= k1+k2+r1+r2 gives
 * a pure [[2n, k1+k2+r1+r2-r, r, d]]_q with d >= min{d1, 2 d2}.
 */
inline std::vector<SubsystemDescriptor> combine_nested(const SubsystemDescriptor& d1,
                                                       const SubsystemDescriptor& d2,
                                                       bool nesting_witness) {
    if (!nesting_witness)
        throw std::invalid_argument("combine_nested(): nesting witness not asserted");
    if (d1.q() != d2.q())
        throw std::invalid_argument("combine_nested(): inputs over different fields");
    if (d1.n() != d2.n())
        throw std::invalid_argument("combine_nested(): inputs of different lengths");
    if (!d1.is_pure() || !d2.is_pure())
        throw std::invalid_argument("combine_nested(): purity prerequisite on both inputs");
    if (!d1.has_brackets() || !d2.has_brackets())
        throw std::invalid_argument("combine_nested(): inputs have no q-ary bracket form");
    const long long sum = *d1.k() + *d2.k() + *d1.r() + *d2.r();
    const long long dv = std::min(d1.d().value, 2 * d2.d().value);
    const bool linear = field_of_order(d1.q()).m() == 1;
    auto prov = detail::merge_provenance(d1, d2);
    std::vector<SubsystemDescriptor> family;
    for (long long r = 0; r <= sum; ++r) {
        auto out = SubsystemDescriptor::from_brackets(
            d1.q(), 2 * d1.n(), std::uint32_t(sum - r), std::uint32_t(r),
            Distance::at_least(dv), dv, Purity::pure, linear, prov);
        family.push_back(out.with_provenance("rule thm19: " + d1.str() + " + " + d2.str() +
                                             " -> " + out.str()));
    }
    return family;
}

}  // namespace subsys
