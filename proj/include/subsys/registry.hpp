#pragma once

/*
 * Code-table registry: seed with the cyclic / BCH / MDS construction
 * families, close under the parameter propagation rules, and keep exactly
 * one Pareto-best record per (q, n, k, r) key.  Emits tables as csv, json
 * lines, or markdown with deterministic (q, n, k, r) ordering.
 */

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "subsys/constructions.hpp"
#include "subsys/json_io.hpp"
#include "subsys/propagation.hpp"
#include "subsys/subsystem.hpp"

namespace subsys {

struct CodeRecord {
    SubsystemDescriptor descriptor;

    // dominates-key: at most one record per (q, n, k, r) survives
    std::tuple<std::uint32_t, long long, long long, long long> key() const {
        return {descriptor.q(), (long long)descriptor.n(), *descriptor.k(), *descriptor.r()};
    }
    const std::vector<std::string>& provenance() const { return descriptor.provenance(); }
};

// Pareto preference at a fixed key: larger d wins; at equal d an exact value
// beats a lower bound; after that the shorter provenance chain wins.
inline bool improves(const SubsystemDescriptor& a, const SubsystemDescriptor& b) {
    if (a.d().value != b.d().value) return a.d().value > b.d().value;
    if (a.d().is_exact() != b.d().is_exact()) return a.d().is_exact();
    return a.provenance().size() < b.provenance().size();
}

class Registry {
  public:
    Registry(std::uint32_t q, int n_max) : q_(q), n_max_(n_max) {
        field_of_order(q);
        if (n_max < 1)
            throw std::invalid_argument("Registry: n_max must be positive");
    }

    std::uint32_t q() const { return q_; }
    int n_max() const { return n_max_; }
    std::size_t size() const { return recs_.size(); }
    bool empty() const { return recs_.empty(); }

    /*
     * Pareto insertion.  Records with n > n_max are out of scope and
     * silently dropped (the closure uses this to discard combined codes
     * that outgrow the table).  Returns true when the record was inserted
     * or replaced an older one.
     */
    bool insert(const SubsystemDescriptor& d) {
        if (d.q() != q_)
            throw std::invalid_argument("Registry::insert(): alphabet mismatch, table is over GF(" +
                                        std::to_string(q_) + ")");
        if (!d.has_brackets())
            throw std::invalid_argument(
                "Registry::insert(): record key needs integral k and r: " + d.str());
        if ((long long)d.n() > n_max_) return false;
        if (d.is_linear() && d.d().is_exact()) {
            auto s = singleton_check(d);
            if (!s.indeterminate && s.slack < 0)
                throw std::logic_error("Registry::insert(): record violates the Singleton bound: " +
                                       d.str());
        }
        Key key{(long long)d.n(), *d.k(), *d.r()};
        auto it = recs_.find(key);
        if (it == recs_.end()) {
            recs_.emplace(key, CodeRecord{d});
            return true;
        }
        if (improves(d, it->second.descriptor)) {
            it->second.descriptor = d;
            return true;
        }
        return false;
    }

    const CodeRecord* find(int n, long long k, long long r) const {
        auto it = recs_.find(Key{n, k, r});
        return it == recs_.end() ? nullptr : &it->second;
    }
    bool contains(int n, long long k, long long r) const { return find(n, k, r) != nullptr; }

    std::vector<CodeRecord> records() const {
        std::vector<CodeRecord> out;
        out.reserve(recs_.size());
        for (const auto& [key, rec] : recs_) out.push_back(rec);
        return out;
    }

    // Re-checks every record against the Singleton bound (linear, exact d)
    // and its own key; returns the number of violations, 0 on a clean table.
    int audit() const {
        int bad = 0;
        for (const auto& [key, rec] : recs_) {
            const SubsystemDescriptor& d = rec.descriptor;
            if (Key{(long long)d.n(), *d.k(), *d.r()} != key) ++bad;
            if (d.is_linear() && d.d().is_exact()) {
                auto s = singleton_check(d);
                if (!s.indeterminate && s.slack < 0) ++bad;
            }
        }
        return bad;
    }

    bool operator==(const Registry& o) const {
        if (q_ != o.q_ || recs_.size() != o.recs_.size()) return false;
        for (const auto& [key, rec] : recs_) {
            auto it = o.recs_.find(key);
            if (it == o.recs_.end() || !(it->second.descriptor == rec.descriptor)) return false;
        }
        return true;
    }

  private:
    using Key = std::tuple<long long, long long, long long>;  // (n, k, r), q fixed per table
    std::uint32_t q_;
    int n_max_;
    std::map<Key, CodeRecord> recs_;
};

namespace detail {

inline std::vector<DefiningSet> all_cosets(int n, std::uint32_t q) {
    return region_cosets(DefiningSet::full(n, q), DefiningSet::empty(n, q));
}

/*
 * Sweep every cyclic subsystem code of length <= n_max over the given
 * alphabet.  For lengths whose coset count keeps the union lattice small
 * (2^8) every self-orthogonal T_D is tried; beyond that only the
 * narrow-sense chains T_D = dual(BCH(delta)) are.  Defining sets whose
 * admissible region exceeds 2^8 gauge choices are skipped.
 */
inline void seed_cyclic_alphabet(Registry& reg, std::uint32_t alphabet, Flavor flavor,
                                 const EnumBudget& budget) {
    for (int n = 2; n <= reg.n_max(); ++n) {
        if (std::gcd((long long)n, (long long)alphabet) != 1) continue;
        // the splitting field GF(alphabet^order) must fit the 2^16 table cap
        std::uint32_t order = mult_order(alphabet, std::uint32_t(n));
        std::uint64_t split_size = 1;
        bool fits = true;
        for (std::uint32_t i = 0; i < order && fits; ++i) {
            split_size *= alphabet;
            fits = split_size <= (std::uint64_t(1) << 16);
        }
        if (!fits) continue;
        std::vector<DefiningSet> cosets = all_cosets(n, alphabet);

        std::vector<DefiningSet> candidates;
        if (cosets.size() <= 8) {
            for (std::uint32_t mask = 0; mask < (1u << cosets.size()); ++mask) {
                DefiningSet t_d = DefiningSet::empty(n, alphabet);
                for (std::size_t i = 0; i < cosets.size(); ++i)
                    if (mask & (1u << i)) t_d = t_d.unite(cosets[i]);
                candidates.push_back(std::move(t_d));
            }
        } else {
            for (int delta = 2; delta <= n; ++delta) {
                DefiningSet bch = bch_defining_set(n, alphabet, delta);
                if (bch.size() >= n) break;
                candidates.push_back(flavor_dual_ds(bch, flavor));
            }
        }

        std::set<std::vector<int>> seen;
        for (const DefiningSet& t_d : candidates) {
            if (!seen.insert(t_d.members()).second) continue;
            if (!t_d.contains_set(flavor_dual_ds(t_d, flavor))) continue;
            std::vector<AdmissibleChoice> choices;
            try {
                choices = admissible_T_enumerator(t_d, flavor);
            } catch (const std::domain_error&) {
                continue;
            }
            if (choices.size() > (1u << 8)) continue;
            for (const AdmissibleChoice& choice : choices) {
                try {
                    reg.insert(cyclic_subsystem(CyclicSubsysSpec{t_d, choice.t, flavor}, budget));
                } catch (const std::invalid_argument&) {
                    // out-of-range r or a trivial gauge code: not a family member
                }
            }
        }
    }
}

// Every MDS family member [[n, k, r, d]]_q with n <= n_max; distances are
// theorem-backed, so no enumeration budget is involved.
inline void seed_mds(Registry& reg, std::uint32_t q) {
    const int n_max = reg.n_max();
    auto push = [&](MdsItem item, const MdsParams& p) {
        try {
            reg.insert(mds_family(item, q, p).desc);
        } catch (const std::invalid_argument&) {
        }
    };
    for (int n = 3; n <= std::min<long long>(q, n_max); ++n)
        for (int d = 1; 2 * d <= n + 2; ++d)
            for (int r = 0; r <= n - 2 * d + 1; ++r)
                push(MdsItem::i, MdsParams{.n = n, .d = d, .nu = 0, .delta = 0, .r = r});
    for (int nu = 0; nu + 2 <= (int)q; ++nu) {
        long long n = (long long)(nu + 1) * q;
        if (n > n_max) break;
        for (int r = 0; r <= n - 2 * nu - 3; ++r)
            push(MdsItem::ii, MdsParams{.n = 0, .d = 0, .nu = nu, .delta = 0, .r = r});
    }
    for (int delta = 0; 2 * delta < (int)q - 1; ++delta) {
        if ((long long)q - 1 <= n_max)
            for (int r = 0; r <= (int)q - 2 * delta - 1; ++r)
                push(MdsItem::iii, MdsParams{.n = 0, .d = 0, .nu = 0, .delta = delta, .r = r});
        if ((long long)q <= n_max)
            for (int r = 0; r < (int)q - 2 * delta - 2; ++r)
                push(MdsItem::iv, MdsParams{.n = 0, .d = 0, .nu = 0, .delta = delta, .r = r});
    }
    for (int delta = 0; delta < (int)q - 1; ++delta) {
        long long nsq = (long long)q * q;
        if (nsq - 1 <= n_max)
            for (int r = 0; r < nsq - 1 - 2 * delta; ++r)
                push(MdsItem::v, MdsParams{.n = 0, .d = 0, .nu = 0, .delta = delta, .r = r});
        if (nsq <= n_max)
            for (int r = 0; r < nsq - 2 * delta - 2; ++r)
                push(MdsItem::vi, MdsParams{.n = 0, .d = 0, .nu = 0, .delta = delta, .r = r});
    }
}

}  // namespace detail

/*
 * Default distance-verification budget for table work: 2^16 enumeration
 * steps per code, enough for exact distances through length ~32 binary and
 * ~15 quaternary; anything larger keeps its designed lower bound instead of
 * stalling the sweep.  SUBSYS_MAX_ENUM overrides.
 */
inline EnumBudget seed_budget_default() {
    EnumBudget b = EnumBudget::from_env();
    if (!std::getenv("SUBSYS_MAX_ENUM")) b.max_steps = std::uint64_t(1) << 16;
    return b;
}

inline Registry seed(std::uint32_t q, int n_max, const EnumBudget& budget = seed_budget_default()) {
    static const std::uint32_t alphabets[] = {2, 3, 4, 5, 7, 8, 9};
    if (std::find(std::begin(alphabets), std::end(alphabets), q) == std::end(alphabets))
        throw std::invalid_argument("seed(): alphabet must be one of 2, 3, 4, 5, 7, 8, 9");
    if (n_max < 1 || n_max > 128)
        throw std::invalid_argument("seed(): n_max must lie in [1, 128]");
    Registry reg(q, n_max);
    if (budget.max_steps == 0) return reg;

    detail::seed_cyclic_alphabet(reg, q, Flavor::euclidean, budget);
    detail::seed_cyclic_alphabet(reg, q * q, Flavor::hermitian, budget);
    detail::seed_mds(reg, q);
    return reg;
}

inline const std::vector<std::string>& default_closure_rules() {
    static const std::vector<std::string> rules = {"thm9",  "thm11", "cor12",
                                                   "thm15", "thm17", "thm18"};
    return rules;
}

/*
 * Close the table under the given parameter rules: apply every rule to every
 * record (and record pair for the disjoint combiner) until nothing improves
 * or the iteration cap is hit.  Constructive rules need explicit codes and
 * the nested combiner needs a nesting witness, so neither can run here.
 */
inline Registry close(Registry reg,
                      const std::vector<std::string>& rule_ids = default_closure_rules(),
                      int iteration_cap = 32) {
    for (const std::string& id : rule_ids) {
        if (id == "thm19")
            throw std::invalid_argument(
                "close(): rule thm19 needs a nesting witness no parameter record can supply");
        if (rule_tier(id) != RuleTier::parametric)
            throw std::invalid_argument("close(): rule " + id +
                                        " is constructive and needs an explicit code");
    }
    auto has = [&](const char* id) {
        return std::find(rule_ids.begin(), rule_ids.end(), id) != rule_ids.end();
    };
    if (iteration_cap < 1) return reg;

    for (int iter = 0; iter < iteration_cap; ++iter) {
        bool changed = false;
        auto try_insert = [&](const SubsystemDescriptor& d) { changed |= reg.insert(d); };
        const std::vector<CodeRecord> snapshot = reg.records();

        for (const CodeRecord& rec : snapshot) {
            const SubsystemDescriptor& d = rec.descriptor;
            if (has("thm9")) {
                try {
                    try_insert(shrink_k_linear(d));
                } catch (const std::invalid_argument&) {
                }
            }
            if (has("thm11")) {
                try {
                    try_insert(grow_k_linear(d));
                } catch (const std::invalid_argument&) {
                }
            }
            if (has("cor12")) {
                try {
                    try_insert(subsystem_to_stabilizer(d));
                } catch (const std::invalid_argument&) {
                }
                if (d.is_stabilizer() && d.k())
                    for (long long r = 1; r < *d.k(); ++r) {
                        try {
                            try_insert(stabilizer_to_subsystem(d, r));
                        } catch (const std::invalid_argument&) {
                            break;
                        }
                    }
            }
            if (has("thm15") && d.k())
                for (long long r = 0; r <= *d.k(); ++r) {
                    try {
                        try_insert(mds_trade(d, r));
                    } catch (const std::invalid_argument&) {
                        break;  // MDS-ness does not depend on r
                    }
                }
            if (has("thm17")) {
                try {
                    try_insert(shorten(d));
                } catch (const std::invalid_argument&) {
                }
            }
        }

        if (has("thm18") && reg.q() == 2)
            for (const CodeRecord& ra : snapshot) {
                const SubsystemDescriptor& a = ra.descriptor;
                if (!a.is_pure()) continue;
                for (const CodeRecord& rb : snapshot) {
                    const SubsystemDescriptor& b = rb.descriptor;
                    if (!b.is_pure()) continue;
                    long long n_out = (long long)a.n() + b.n() - (*b.k() + *b.r());
                    if (n_out > reg.n_max()) continue;
                    try {
                        for (const SubsystemDescriptor& out : combine_disjoint(a, b))
                            try_insert(out);
                    } catch (const std::invalid_argument&) {
                    }
                }
            }

        if (!changed) break;  // fixed point
    }
    return reg;
}

enum class TableFormat { csv, json, markdown };

inline TableFormat parse_table_format(const std::string& s) {
    if (s == "csv") return TableFormat::csv;
    if (s == "json") return TableFormat::json;
    if (s == "markdown") return TableFormat::markdown;
    throw std::invalid_argument("parse_table_format(): want csv, json, or markdown, got \"" + s +
                                "\"");
}

/*
 * Render the table in deterministic (q, n, k, r) order.  The d column reads
 * "3" for an exact distance and ">=3" for a lower bound; json output is one
 * descriptor object per line and reimports losslessly.
 */
inline std::string emit(const Registry& reg, TableFormat fmt) {
    std::ostringstream out;
    auto d_text = [](const Distance& d) {
        return (d.is_exact() ? "" : std::string(">=")) + std::to_string(d.value);
    };
    auto joined = [](const std::vector<std::string>& parts) {
        std::string s;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (i) s += "; ";
            s += parts[i];
        }
        return s;
    };
    switch (fmt) {
        case TableFormat::csv:
            out << "q,n,k,r,d,pure_to,purity,linear,provenance\n";
            for (const CodeRecord& rec : reg.records()) {
                const SubsystemDescriptor& d = rec.descriptor;
                out << d.q() << ',' << d.n() << ',' << *d.k() << ',' << *d.r() << ','
                    << d_text(d.d()) << ','
                    << (d.pure_to() ? std::to_string(*d.pure_to()) : std::string()) << ','
                    << purity_name(d.purity()) << ',' << (d.is_linear() ? 1 : 0) << ",\""
                    << joined(d.provenance()) << "\"\n";
            }
            break;
        case TableFormat::json:
            for (const CodeRecord& rec : reg.records())
                out << descriptor_to_json(rec.descriptor).dump() << '\n';
            break;
        case TableFormat::markdown:
            out << "| n | k | r | d | purity | provenance |\n";
            out << "|--:|--:|--:|:--|:--|:--|\n";
            for (const CodeRecord& rec : reg.records()) {
                const SubsystemDescriptor& d = rec.descriptor;
                out << "| " << d.n() << " | " << *d.k() << " | " << *d.r() << " | "
                    << d_text(d.d()) << " | " << purity_name(d.purity()) << " | "
                    << joined(d.provenance()) << " |\n";
            }
            break;
    }
    return out.str();
}

// Rebuild a registry from emit(..., json) output; the JSON round trip is lossless.
inline Registry import_json_lines(std::uint32_t q, int n_max, const std::string& text) {
    Registry reg(q, n_max);
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        reg.insert(descriptor_from_json(nlohmann::json::parse(line)));
    }
    return reg;
}

}  // namespace subsys
