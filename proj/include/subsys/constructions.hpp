#pragma once
// Named code families.  Cyclic subsystem constructions driven by defining
// sets (pick a self-orthogonal cyclic D, carve the gauge code C out of T_D),
// primitive narrow-sense BCH families with guaranteed designed distance, and
// the MDS families obtained from Reed-Solomon parents.  Everything funnels
// into the Euclidean/Hermitian construction engine of subsystem.hpp.

#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "subsys/cyclotomic.hpp"
#include "subsys/galois.hpp"
#include "subsys/lincode.hpp"
#include "subsys/subsystem.hpp"
#include "subsys/weights.hpp"

namespace subsys {

enum class Flavor { euclidean, hermitian };

inline const char* flavor_name(Flavor f) {
    return f == Flavor::euclidean ? "euclidean" : "hermitian";
}

// Scaling exponent of the dual defining set: T_{C^dual} = N - T^{-a} with
// a = 1 for the Euclidean dual and a = sqrt(q) for the Hermitian dual.
inline long long dual_scale(const DefiningSet& ds, Flavor flavor) {
    if (flavor == Flavor::euclidean) return -1;
    const FieldSpec& f = field_of_order(ds.q());
    return -(long long)f.sqrt_q();
}

inline DefiningSet flavor_dual_ds(const DefiningSet& ds, Flavor flavor) {
    return flavor == Flavor::euclidean ? euclidean_dual_ds(ds) : hermitian_dual_ds(ds);
}

inline LinearCode flavor_dual_of(const LinearCode& c, Flavor flavor) {
    return flavor == Flavor::euclidean ? dual_of(c) : hermitian_dual_of(c);
}

/*
 * Cyclic construction data: a self-orthogonal cyclic code D (defining set
 * T_D over GF(q), or GF(q^2) for the Hermitian flavor) and a coset union
 * T inside T_D - T_{D^dual}.  The gauge code is the cyclic code with
 *   T_C = T_D - (T u T^-1)   (Euclidean),
 *   T_C = T_D - (T u T^-q)   (Hermitian, alphabet q^2),
 * and r = |T u T^-a| gauge qudits are traded away from the stabilizer code.
 */
struct CyclicSubsysSpec {
    DefiningSet t_d;
    DefiningSet t;
    Flavor flavor = Flavor::euclidean;

    int n() const { return t_d.n(); }
    std::uint32_t q() const { return t_d.q(); }
};

inline SubsystemDescriptor cyclic_subsystem(const CyclicSubsysSpec& spec,
                                            const EnumBudget& budget = EnumBudget::from_env(),
                                            std::optional<long long> designed = std::nullopt) {
    const DefiningSet& t_d = spec.t_d;
    const int n = t_d.n();
    if (spec.flavor == Flavor::hermitian) {
        const FieldSpec& f = field_of_order(t_d.q());
        if (f.m() % 2 != 0)
            throw std::invalid_argument(
                "cyclic_subsystem(): hermitian flavor needs an alphabet GF(q^2)");
    }
    DefiningSet t_dperp = flavor_dual_ds(t_d, spec.flavor);
    if (!t_d.contains_set(t_dperp))
        throw std::invalid_argument("cyclic_subsystem(): D is not self-orthogonal");

    DefiningSet region = t_d.minus(t_dperp);
    if (!region.contains_set(spec.t))
        throw std::invalid_argument(
            "cyclic_subsystem(): T must lie inside T_D minus T_{D^dual}");
    DefiningSet t_full = spec.t.unite(spec.t.scale(dual_scale(t_d, spec.flavor)));
    if (!region.contains_set(t_full))
        throw std::logic_error("cyclic_subsystem(): T^-a escaped the admissible region");

    const int k = n - t_d.size();
    const int r = t_full.size();
    if (r >= n - 2 * k)
        throw std::invalid_argument("cyclic_subsystem(): r = " + std::to_string(r) +
                                    " out of range, need r < n - 2k = " +
                                    std::to_string(n - 2 * k));
    if (k + r == 0)
        throw std::invalid_argument("cyclic_subsystem(): gauge code is zero (D trivial, T empty)");

    DefiningSet t_c = t_d.minus(t_full);
    // Proposition identity: T_C u T_{C^dual} = T_D, hence C n C^dual = D.
    if (!(t_c.unite(flavor_dual_ds(t_c, spec.flavor)) == t_d))
        throw std::logic_error("cyclic_subsystem(): defining-set identity failed");

    LinearCode c = LinearCode::from_cyclic(CyclicCode{t_c});
    LinearCode dperp = LinearCode::from_cyclic(CyclicCode{t_dperp});
    if (c.k() != k + r) throw std::logic_error("cyclic_subsystem(): dim C != k + r");

    long long fallback = designed.value_or(bch_bound(t_dperp));
    Distance d = Distance::at_least(fallback);
    if (auto cm = dperp.coset_min_weight(c, budget)) d = Distance::exact(*cm);
    std::optional<long long> pure_to;
    if (auto mw = c.min_weight(budget)) pure_to = *mw;
    Purity purity = classify_purity(pure_to, d);

    const std::uint32_t out_q = spec.flavor == Flavor::euclidean
                                    ? t_d.q()
                                    : field_of_order(t_d.q()).sqrt_q();
    std::ostringstream rec;
    rec << "cyclic construction (" << flavor_name(spec.flavor) << "): n=" << n
        << " alphabet=" << t_d.q() << " |T_D|=" << t_d.size() << " r=" << r;
    return SubsystemDescriptor::from_brackets(out_q, std::uint32_t(n),
                                              std::uint32_t(n - 2 * k - r), std::uint32_t(r), d,
                                              pure_to, purity, /*is_linear=*/true, {rec.str()});
}

inline SubsystemDescriptor cyclic_euclidean(const CyclicSubsysSpec& spec,
                                            const EnumBudget& budget = EnumBudget::from_env(),
                                            std::optional<long long> designed = std::nullopt) {
    if (spec.flavor != Flavor::euclidean)
        throw std::invalid_argument("cyclic_euclidean(): spec flavor mismatch");
    return cyclic_subsystem(spec, budget, designed);
}

inline SubsystemDescriptor cyclic_hermitian(const CyclicSubsysSpec& spec,
                                            const EnumBudget& budget = EnumBudget::from_env(),
                                            std::optional<long long> designed = std::nullopt) {
    if (spec.flavor != Flavor::hermitian)
        throw std::invalid_argument("cyclic_hermitian(): spec flavor mismatch");
    return cyclic_subsystem(spec, budget, designed);
}

// One admissible gauge choice: T, its closure T u T^-a, and r.
struct AdmissibleChoice {
    DefiningSet t;
    DefiningSet t_full;
    int r = 0;
};

namespace detail {

// The admissible region T_D - T_{D^dual} split into distinct cyclotomic
// cosets (ascending leaders).
inline std::vector<DefiningSet> region_cosets(const DefiningSet& t_d, const DefiningSet& t_dperp) {
    DefiningSet region = t_d.minus(t_dperp);
    std::vector<DefiningSet> cosets;
    std::vector<bool> seen(std::size_t(t_d.n()), false);
    for (int x : region.members()) {
        if (seen[std::size_t(x)]) continue;
        auto cs = cyclotomic_coset(x, t_d.n(), t_d.q());
        for (int y : cs) seen[std::size_t(y)] = true;
        cosets.push_back(DefiningSet(t_d.n(), t_d.q(), cs));
    }
    return cosets;
}

/*
 * The region is closed under x -> -a x at coset level, so its cosets pair
 * up into orbits {C, -a C} (self-paired when -a C = C).  Any gauge choice
 * T u T^-a is a union of whole orbits, so the achievable r values are the
 * subset sums of the orbit sizes.
 */
inline std::vector<DefiningSet> region_orbits(const DefiningSet& t_d, const DefiningSet& t_dperp,
                                              long long a) {
    std::vector<DefiningSet> orbits;
    std::vector<bool> used(std::size_t(t_d.n()), false);
    for (const DefiningSet& c : region_cosets(t_d, t_dperp)) {
        if (used[std::size_t(c.members().front())]) continue;
        DefiningSet orb = c.unite(c.scale(a));
        for (int y : orb.members()) used[std::size_t(y)] = true;
        orbits.push_back(std::move(orb));
    }
    return orbits;
}

}  // namespace detail

/*
 * Enumerate every coset union T inside T_D - T_{D^dual} together with
 * r = |T u T^-a|.  The region always contains T = {} (the stabilizer case);
 * more than 16 distinct cosets would mean 2^16+ subsets and is rejected.
 */
inline std::vector<AdmissibleChoice> admissible_T_enumerator(const DefiningSet& t_d,
                                                             Flavor flavor) {
    DefiningSet t_dperp = flavor_dual_ds(t_d, flavor);
    if (!t_d.contains_set(t_dperp))
        throw std::invalid_argument("admissible_T_enumerator(): D is not self-orthogonal");
    std::vector<DefiningSet> cosets = detail::region_cosets(t_d, t_dperp);
    if (cosets.size() > 16)
        throw std::domain_error("admissible_T_enumerator(): region has " +
                                std::to_string(cosets.size()) +
                                " cosets; refusing to enumerate beyond 2^16 subsets");

    const long long a = dual_scale(t_d, flavor);
    std::vector<AdmissibleChoice> out;
    for (std::uint32_t mask = 0; mask < (1u << cosets.size()); ++mask) {
        DefiningSet t = DefiningSet::empty(t_d.n(), t_d.q());
        for (std::size_t i = 0; i < cosets.size(); ++i)
            if (mask & (1u << i)) t = t.unite(cosets[i]);
        DefiningSet t_full = t.unite(t.scale(a));
        out.push_back(AdmissibleChoice{t, t_full, t_full.size()});
    }
    return out;
}

/*
 * Primitive narrow-sense BCH families.  The Euclidean flavor starts from
 * D^perp = BCH(q^m - 1, q; delta) with
 *   2 <= delta <= q^ceil(m/2) - 1 - (q-2)[m odd],
 * where self-orthogonality of D and dim D = m*ceil((delta-1)(1-1/q)) are
 * guaranteed; the Hermitian flavor uses GF(q^2), length q^2m - 1, and
 *   2 <= delta <= q^(m+[m even]) - 1 - (q^2-2)[m even],
 * with dim D = m*ceil((delta-1)(1-1/q^2)).  The target r is met by
 * searching the admissible coset unions.
 */
struct BchFamilySpec {
    std::uint32_t q = 2;  // base alphabet of the subsystem code
    std::uint32_t m = 2;
    int delta = 2;
    int r = 0;
    Flavor flavor = Flavor::euclidean;
};

inline SubsystemDescriptor bch_family(const BchFamilySpec& spec,
                                      const EnumBudget& budget = EnumBudget::from_env()) {
    const std::uint32_t q = spec.q;
    const std::uint32_t m = spec.m;
    std::uint64_t n64 = 1;
    std::uint32_t coset_q;
    long long delta_max;
    std::uint64_t k_formula;
    if (spec.flavor == Flavor::euclidean) {
        if (m < 2) throw std::invalid_argument("bch_family(): euclidean flavor needs m >= 2");
        for (std::uint32_t i = 0; i < m; ++i) n64 *= q;
        coset_q = q;
        delta_max = 1;
        for (std::uint32_t i = 0; i < (m + 1) / 2; ++i) delta_max *= q;
        delta_max -= 1 + (m % 2 == 1 ? (long long)q - 2 : 0);
        // k = m * ceil((delta-1)(1-1/q))
        k_formula = m * ((std::uint64_t(spec.delta - 1) * (q - 1) + q - 1) / q);
    } else {
        if (m < 1) throw std::invalid_argument("bch_family(): m must be positive");
        for (std::uint32_t i = 0; i < 2 * m; ++i) n64 *= q;
        coset_q = q * q;
        delta_max = 1;
        for (std::uint32_t i = 0; i < m + (m % 2 == 0 ? 1 : 0); ++i) delta_max *= q;
        delta_max -= 1 + (m % 2 == 0 ? (long long)q * q - 2 : 0);
        k_formula = m * ((std::uint64_t(spec.delta - 1) * (std::uint64_t(q) * q - 1) +
                          std::uint64_t(q) * q - 1) /
                         (std::uint64_t(q) * q));
    }
    n64 -= 1;
    if (n64 > 1u << 20) throw std::invalid_argument("bch_family(): length overflow");
    const int n = int(n64);
    if (spec.delta < 2 || spec.delta > delta_max)
        throw std::invalid_argument("bch_family(): designed distance " +
                                    std::to_string(spec.delta) + " outside [2, " +
                                    std::to_string(delta_max) + "]");

    DefiningSet t_dperp = bch_defining_set(n, coset_q, spec.delta);
    DefiningSet t_d = flavor_dual_ds(t_dperp, spec.flavor);
    if (!t_d.contains_set(t_dperp))
        throw std::logic_error("bch_family(): guaranteed self-orthogonality failed");
    const int k = n - t_d.size();
    if (std::uint64_t(k) != k_formula)
        throw std::logic_error("bch_family(): dimension formula mismatch: computed " +
                               std::to_string(k) + ", expected " + std::to_string(k_formula));
    if (spec.r < 0 || spec.r >= n - 2 * k)
        throw std::invalid_argument("bch_family(): r = " + std::to_string(spec.r) +
                                    " out of range, need 0 <= r < " + std::to_string(n - 2 * k));

    // Subset-sum over the orbit sizes: dp[v] holds one orbit subset of total
    // size v, so every achievable r is found without enumerating 2^cosets sets.
    auto orbits = detail::region_orbits(t_d, t_dperp, dual_scale(t_d, spec.flavor));
    std::vector<std::optional<std::vector<std::size_t>>> dp(std::size_t(n) + 1);
    dp[0] = std::vector<std::size_t>{};
    for (std::size_t i = 0; i < orbits.size(); ++i) {
        const std::size_t w = std::size_t(orbits[i].size());
        for (std::size_t v = std::size_t(n); v + 1 > w; --v) {
            if (dp[v] || !dp[v - w]) continue;
            dp[v] = *dp[v - w];
            dp[v]->push_back(i);
        }
    }
    if (!dp[std::size_t(spec.r)])
        throw std::invalid_argument("bch_family(): no coset union achieves r = " +
                                    std::to_string(spec.r));
    DefiningSet t = DefiningSet::empty(n, coset_q);
    for (std::size_t i : *dp[std::size_t(spec.r)]) t = t.unite(orbits[i]);

    CyclicSubsysSpec cs{t_d, t, spec.flavor};
    auto desc = cyclic_subsystem(cs, budget, spec.delta);
    std::ostringstream rec;
    rec << "bch family (" << flavor_name(spec.flavor) << "): q=" << q << " m=" << m
        << " delta=" << spec.delta << " r=" << spec.r;
    return desc.with_provenance(rec.str());
}

// Reed-Solomon code over GF(Q) of length Q-1 and dimension k: the cyclic
// code whose defining set is the run {b, b+1, ..., b+(n-k)-1}.
inline DefiningSet rs_defining_set(std::uint32_t field_q, int k, int b = 1) {
    const int n = int(field_q) - 1;
    if (k < 0 || k > n) throw std::invalid_argument("rs_defining_set(): dimension out of range");
    std::vector<int> run;
    for (int i = 0; i < n - k; ++i) run.push_back(b + i);
    return DefiningSet(n, field_q, std::move(run));
}

inline LinearCode rs_code(std::uint32_t field_q, int k, int b = 1) {
    return LinearCode::from_cyclic(CyclicCode{rs_defining_set(field_q, k, b)});
}

/*
 * Classical single-coordinate modifications.  extend_code appends the
 * coordinate -sum(c), so every extended word sums to zero; puncture_code
 * deletes one coordinate.  Both return canonicalized codes (the punctured
 * dimension can legitimately drop when d = 1).
 */
inline LinearCode extend_code(const LinearCode& c) {
    const FieldSpec& f = c.field();
    std::vector<std::vector<felt>> rows;
    for (int i = 0; i < c.k(); ++i) {
        auto row = c.generator().row_vec(std::size_t(i));
        felt s = 0;
        for (felt x : row) s = f.add(s, x);
        row.push_back(f.neg(s));
        rows.push_back(std::move(row));
    }
    return LinearCode::from_generators(f, c.n() + 1, rows);
}

inline LinearCode puncture_code(const LinearCode& c, int pos) {
    if (pos < 0 || pos >= c.n())
        throw std::invalid_argument("puncture_code(): position out of range");
    if (c.n() < 2) throw std::invalid_argument("puncture_code(): length would vanish");
    std::vector<std::vector<felt>> rows;
    for (int i = 0; i < c.k(); ++i) {
        auto row = c.generator().row_vec(std::size_t(i));
        row.erase(row.begin() + pos);
        rows.push_back(std::move(row));
    }
    return LinearCode::from_generators(c.field(), c.n() - 1, rows);
}

/*
 * MDS subsystem families.  Every item fixes k + r = n - 2d + 2, all outputs
 * are pure and linear with exact distance.  Items i and ii rest on counting
 * and Reed-Muller existence results, so they come back as parameter records
 * without a generator (constructive = false).  Items iii..vi are realized
 * from Reed-Solomon parents:
 *   iii) [[q-1,  q-1-2delta-r,  r,  delta+1]]_q  from RS [q-1, delta+r] over GF(q),
 *   iv)  [[q,    q-2delta-2-r,  r,  delta+2]]_q  from the extended RS [q, delta+1+r],
 *   v)   [[q^2-1, q^2-1-2delta-r, r, delta+1]]_q from RS [q^2-1, delta+r] over GF(q^2),
 *   vi)  [[q^2,  q^2-2delta-2-r, r, delta+2]]_q  from the extended RS [q^2, delta+1+r],
 * where the run offset b is searched so that dim(C n C^dual) lands on delta
 * (resp. delta+1), which pins (k, r) by the construction lemma arithmetic.
 */
enum class MdsItem { i, ii, iii, iv, v, vi };

struct MdsParams {
    int n = 0;      // item i
    int d = 0;      // item i
    int nu = 0;     // item ii
    int delta = 0;  // items iii..vi
    int r = 0;      // all items
};

struct FamilyRecord {
    SubsystemDescriptor desc;
    bool constructive = false;
    std::optional<LinearCode> parent;   // gauge parent C when constructive
    Flavor flavor = Flavor::euclidean;  // which construction consumes the parent
    std::string note;
};

namespace detail {

// Extension with a twisted parity coordinate -lambda * sum(c).
inline LinearCode extend_twisted(const LinearCode& c, felt lambda) {
    const FieldSpec& f = c.field();
    std::vector<std::vector<felt>> rows;
    for (int i = 0; i < c.k(); ++i) {
        auto row = c.generator().row_vec(std::size_t(i));
        felt s = 0;
        for (felt x : row) s = f.add(s, x);
        row.push_back(f.neg(f.mul(lambda, s)));
        rows.push_back(std::move(row));
    }
    return LinearCode::from_generators(f, c.n() + 1, rows);
}

/*
 * The distance pinch behind the MDS families needs the radical D = C n
 * C^dual to be MDS, so that D^dual has minimum distance dim(D) + 1.  The
 * check enumerates at most 2^22 words; a radical too large to verify is
 * accepted as-is (the family theorem guarantees a valid parent exists).
 */
inline bool radical_admissible(const LinearCode& d_code) {
    if (d_code.k() == 0) return true;
    auto mw = d_code.min_weight(EnumBudget{std::uint64_t(1) << 22});
    if (!mw) return true;
    return *mw == d_code.n() - d_code.k() + 1;
}

// [n, k] code spanned by the first k unit vectors; its radical is zero in
// either flavor.
inline LinearCode unit_parent(std::uint32_t field_q, int n, int k) {
    const FieldSpec& f = field_of_order(field_q);
    std::vector<std::vector<felt>> rows(std::size_t(k), std::vector<felt>(std::size_t(n), 0));
    for (int i = 0; i < k; ++i) rows[std::size_t(i)][std::size_t(i)] = 1;
    return LinearCode::from_generators(f, n, rows);
}

// Search the cyclic run offset b such that dim(C n C^dual) == target with an
// MDS radical, C being the [n, k] consecutive-root code over GF(field_q).
inline std::optional<LinearCode> find_rs_parent(std::uint32_t field_q, int k, Flavor flavor,
                                                int target_kpp) {
    const int n = int(field_q) - 1;
    if (target_kpp == 0) return unit_parent(field_q, n, k);
    std::optional<LinearCode> fallback;
    for (int b = 0; b < n; ++b) {
        DefiningSet t = rs_defining_set(field_q, k, b);
        DefiningSet t_union = t.unite(flavor_dual_ds(t, flavor));
        if (n - t_union.size() != target_kpp) continue;
        LinearCode d_code = LinearCode::from_cyclic(CyclicCode{t_union});
        auto mw = d_code.min_weight(EnumBudget{std::uint64_t(1) << 22});
        if (mw && *mw != n - target_kpp + 1) continue;
        LinearCode c = LinearCode::from_cyclic(CyclicCode{t});
        if (mw) return c;
        if (!fallback) fallback = c;  // radical too big to verify, keep as backup
    }
    return fallback;
}

// Same search for the extended parent [n+1, k], scanning the run offset and
// the extension twist; the radical is computed on the extended code.
inline std::optional<LinearCode> find_extended_rs_parent(std::uint32_t field_q, int k,
                                                         Flavor flavor, int target_kpp) {
    const int n = int(field_q) - 1;
    std::optional<LinearCode> fallback;
    for (std::uint32_t lv = 1; lv < field_q; ++lv) {
        for (int b = 0; b < n; ++b) {
            LinearCode ext = extend_twisted(rs_code(field_q, k, b), felt(lv));
            LinearCode d_code = ext.intersect(flavor_dual_of(ext, flavor));
            if (d_code.k() != target_kpp) continue;
            auto mw = d_code.min_weight(EnumBudget{std::uint64_t(1) << 22});
            if (mw && *mw != (n + 1) - target_kpp + 1) continue;
            if (mw) return ext;
            if (!fallback) fallback = ext;
        }
    }
    return fallback;
}

}  // namespace detail

inline FamilyRecord mds_family(MdsItem item, std::uint32_t q, const MdsParams& p,
                               const EnumBudget& budget = EnumBudget::from_env()) {
    (void)budget;  // distances are theorem-backed, no enumeration happens here
    const std::uint32_t qq = q * q;
    auto pure_desc = [&](std::uint32_t n, long long k, long long r, long long d,
                         std::string rec) {
        if (k < 0 || r < 0) throw std::logic_error("mds_family(): negative dimension");
        return SubsystemDescriptor::from_brackets(q, n, std::uint32_t(k), std::uint32_t(r),
                                                  Distance::exact(d), std::nullopt, Purity::pure,
                                                  /*is_linear=*/true, {std::move(rec)});
    };

    switch (item) {
        case MdsItem::i: {
            if (p.n < 3 || std::uint32_t(p.n) > q || p.d < 1 || 2 * p.d > p.n + 2 ||
                p.r < 0 || p.r > p.n - 2 * p.d + 1)
                throw std::invalid_argument("mds_family(i): parameters out of range");
            auto d = pure_desc(std::uint32_t(p.n), p.n - 2 * p.d + 2 - p.r, p.r, p.d,
                               "mds family i (existence by counting)");
            return FamilyRecord{d, false, std::nullopt, Flavor::euclidean,
                                "non-constructive: random-code counting argument"};
        }
        case MdsItem::ii: {
            const long long n = (long long)(p.nu + 1) * q;
            if (p.nu < 0 || std::uint32_t(p.nu) > q - 2 || p.r < 0 || p.r > n - 2 * p.nu - 3)
                throw std::invalid_argument("mds_family(ii): parameters out of range");
            auto d = pure_desc(std::uint32_t(n), n - 2 * p.nu - 2 - p.r, p.r, p.nu + 2,
                               "mds family ii (Reed-Muller derived)");
            return FamilyRecord{d, false, std::nullopt, Flavor::hermitian,
                                "non-constructive here: cited Reed-Muller construction"};
        }
        case MdsItem::iii:
        case MdsItem::v: {
            const bool herm = item == MdsItem::v;
            const std::uint32_t fq = herm ? qq : q;
            const long long n = (long long)fq - 1;
            const long long rmax = herm ? n - 2 * p.delta : (long long)q - 2 * p.delta - 1;
            if (p.delta < 0 || (herm ? p.delta >= (long long)q - 1
                                     : 2 * p.delta >= (long long)q - 1) ||
                p.r < 0 || (herm ? p.r >= rmax : p.r > rmax))
                throw std::invalid_argument("mds_family(iii/v): parameters out of range");
            const long long k_out = n - 2 * p.delta - p.r;
            std::ostringstream rec;
            rec << "mds family " << (herm ? "v" : "iii") << ": RS parent [" << n << ","
                << p.delta + p.r << "]_" << fq;
            auto d = pure_desc(std::uint32_t(n), k_out, p.r, p.delta + 1, rec.str());
            Flavor fl = herm ? Flavor::hermitian : Flavor::euclidean;
            if (k_out == 0 || p.delta + p.r == 0)
                return FamilyRecord{d, false, std::nullopt, fl,
                                    "degenerate boundary: no proper gauge parent"};
            auto parent = detail::find_rs_parent(fq, p.delta + p.r, fl, p.delta);
            if (!parent)
                return FamilyRecord{d, false, std::nullopt, fl,
                                    "no consecutive-root parent verified; parameters stand"};
            return FamilyRecord{d, true, parent, fl, "RS parent, consecutive roots"};
        }
        case MdsItem::iv:
        case MdsItem::vi: {
            const bool herm = item == MdsItem::vi;
            const std::uint32_t fq = herm ? qq : q;
            const long long n = (long long)fq;  // extended length
            if (p.delta < 0 || (herm ? p.delta >= (long long)q - 1
                                     : 2 * p.delta >= (long long)q - 1) ||
                p.r < 0 || p.r >= n - 2 * p.delta - 2)
                throw std::invalid_argument("mds_family(iv/vi): parameters out of range");
            const long long k_out = n - 2 * p.delta - 2 - p.r;
            std::ostringstream rec;
            rec << "mds family " << (herm ? "vi" : "iv") << ": extended RS parent [" << n << ","
                << p.delta + 1 + p.r << "]_" << fq;
            auto d = pure_desc(std::uint32_t(n), k_out, p.r, p.delta + 2, rec.str());
            Flavor fl = herm ? Flavor::hermitian : Flavor::euclidean;
            auto parent = detail::find_extended_rs_parent(fq, p.delta + 1 + p.r, fl, p.delta + 1);
            if (!parent)
                return FamilyRecord{d, false, std::nullopt, fl,
                                    "no extended consecutive-root parent verified; parameters stand"};
            return FamilyRecord{d, true, parent, fl, "extended RS parent"};
        }
    }
    throw std::invalid_argument("mds_family(): unknown item");
}

}  // namespace subsys
