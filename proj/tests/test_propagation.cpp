#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "subsys/constructions.hpp"
#include "subsys/cyclotomic.hpp"
#include "subsys/galois.hpp"
#include "subsys/lincode.hpp"
#include "subsys/propagation.hpp"
#include "subsys/subsystem.hpp"
#include "subsys/symplectic.hpp"

using namespace subsys;

namespace {

DefiningSet leaders(int n, std::uint32_t q, std::vector<int> ls) {
    return DefiningSet::from_coset_leaders(n, q, ls);
}

LinearCode cyclic_code(int n, std::uint32_t q, std::vector<int> ls) {
    return LinearCode::from_cyclic(CyclicCode{leaders(n, q, std::move(ls))});
}

// Gauge code of the Euclidean construction: C x C = {(a|b) : a, b in C}.
AdditiveCode product_gauge(const LinearCode& c) {
    const FieldSpec& f = c.field();
    std::vector<SympVector> gens;
    std::size_t len = std::size_t(c.n());
    for (int i = 0; i < c.k(); ++i) {
        auto row = c.generator().row_vec(std::size_t(i));
        felt mult = 1;
        for (std::uint32_t t = 0; t < f.m(); ++t) {
            std::vector<felt> scaled(len);
            for (std::size_t j = 0; j < len; ++j) scaled[j] = f.mul(mult, row[j]);
            gens.emplace_back(f, scaled, std::vector<felt>(len, 0));
            gens.emplace_back(f, std::vector<felt>(len, 0), scaled);
            mult = f.mul(mult, f.primitive());
        }
    }
    return AdditiveCode::from_vectors(f, c.n(), gens);
}

// The cyclic five-qubit code: stabilizer generated by XZZXI and its shifts.
AdditiveCode five_qubit_gauge() {
    const FieldSpec& f2 = make_field(2, 1);
    const int xs[4][5] = {{1, 0, 0, 1, 0}, {0, 1, 0, 0, 1}, {1, 0, 1, 0, 0}, {0, 1, 0, 1, 0}};
    const int zs[4][5] = {{0, 1, 1, 0, 0}, {0, 0, 1, 1, 0}, {0, 0, 0, 1, 1}, {1, 0, 0, 0, 1}};
    std::vector<SympVector> gens;
    for (int g = 0; g < 4; ++g) {
        std::vector<felt> a(5), b(5);
        for (int i = 0; i < 5; ++i) {
            a[std::size_t(i)] = felt(xs[g][i]);
            b[std::size_t(i)] = felt(zs[g][i]);
        }
        gens.emplace_back(f2, std::move(a), std::move(b));
    }
    return AdditiveCode::from_vectors(f2, 5, gens);
}

// 3x3 grid gauge group: XX on vertical pairs, ZZ on horizontal pairs.
AdditiveCode grid_gauge() {
    const FieldSpec& f2 = make_field(2, 1);
    auto at = [](int r, int c) { return std::size_t(3 * r + c); };
    std::vector<SympVector> gens;
    for (int c = 0; c < 3; ++c)
        for (int r = 0; r < 2; ++r) {
            std::vector<felt> a(9, 0), b(9, 0);
            a[at(r, c)] = 1;
            a[at(r + 1, c)] = 1;
            gens.emplace_back(f2, std::move(a), std::move(b));
        }
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 2; ++c) {
            std::vector<felt> a(9, 0), b(9, 0);
            b[at(r, c)] = 1;
            b[at(r, c + 1)] = 1;
            gens.emplace_back(f2, std::move(a), std::move(b));
        }
    return AdditiveCode::from_vectors(f2, 9, gens);
}

SympVector random_vec(const FieldSpec& f, int n, std::mt19937& rng) {
    std::uniform_int_distribution<std::uint32_t> pick(0, f.q() - 1);
    std::size_t len = std::size_t(n);
    std::vector<felt> a(len), b(len);
    for (std::size_t i = 0; i < len; ++i) {
        a[i] = felt(pick(rng));
        b[i] = felt(pick(rng));
    }
    return SympVector(f, std::move(a), std::move(b));
}

AdditiveCode random_additive(const FieldSpec& f, int n, int gens, std::mt19937& rng) {
    std::vector<SympVector> vs;
    for (int i = 0; i < gens; ++i) vs.push_back(random_vec(f, n, rng));
    return AdditiveCode::from_vectors(f, n, vs);
}

// Tight budget for exact small-scale derivations: the cheaper enumeration
// side of any code with 2nm <= 32 prime digits fits in 2^16 steps.
const EnumBudget small_budget{1u << 20};

bool mentions(const SubsystemDescriptor& d, const std::string& tag) {
    return !d.provenance().empty() &&
           d.provenance().back().find(tag) != std::string::npos;
}

}  // namespace

TEST_CASE("trading logical dimension for gauge on concrete codes", "[propagation]") {
    SECTION("perfect five-qubit code hits the K = p case") {
        AdditiveCode c = five_qubit_gauge();
        auto desc = from_additive(c);
        REQUIRE(desc.str() == "[[5,1,0,3]]_2");
        REQUIRE(desc.purity() == Purity::pure);
        REQUIRE(desc.pure_to() == 4);

        auto s = shrink_k(c, desc);
        CHECK(s.desc.str() == "[[5,0,1,3]]_2");
        CHECK(s.desc.d().is_exact());
        CHECK(s.desc.purity() == Purity::pure);
        CHECK(from_additive(s.code) == s.desc);
        CHECK(mentions(s.desc, "thm8"));

        // K = 1 leaves nothing to trade
        CHECK_THROWS_AS(shrink_k(s.code, s.desc), std::invalid_argument);
    }
    SECTION("length-15 gauge code sheds one logical qubit") {
        AdditiveCode c = product_gauge(cyclic_code(15, 2, {1, 3}));
        auto desc = from_additive(c);
        REQUIRE(desc.str() == "[[15,4,3,3]]_2");
        REQUIRE(desc.pure_to() == 5);

        auto s = shrink_k(c, desc);
        CHECK(s.desc.str() == "[[15,3,4,>=3]]_2");
        CHECK(s.desc.purity() == Purity::unknown);
        CHECK(s.desc.pure_to() == 3);
        CHECK(s.code.dim_p() == c.dim_p() + 2);

        auto rd = from_additive(s.code);
        CHECK(rd.K() == s.desc.K());
        CHECK(rd.R() == s.desc.R());
        CHECK(rd.str() == "[[15,3,4,3]]_2");
    }
    SECTION("iterated shrinking terminates at the purity gate") {
        AdditiveCode c = product_gauge(cyclic_code(15, 2, {1, 3}));
        auto desc = from_additive(c);
        int steps = 0;
        for (;;) {
            DerivedCode next = [&] {
                return shrink_k(c, desc);
            }();
            c = next.code;
            desc = next.desc;
            ++steps;
            if (desc.K().exp <= 1) break;
        }
        // exponent arithmetic: k drops 4 -> 1 in three steps, r climbs 3 -> 6
        CHECK(steps == 3);
        CHECK(desc.str() == "[[15,1,6,>=3]]_2");
        // the K = p step needs purity, which the rule arithmetic cannot supply
        CHECK_THROWS_AS(shrink_k(c, desc), std::invalid_argument);
    }
    SECTION("descriptor must describe the code") {
        AdditiveCode c = five_qubit_gauge();
        auto other = from_additive(product_gauge(cyclic_code(15, 2, {1, 3})));
        CHECK_THROWS_AS(shrink_k(c, other), std::invalid_argument);
    }
}

TEST_CASE("trading gauge back into logical dimension on pure codes", "[propagation]") {
    SECTION("pure length-15 subsystem code grows a logical qubit") {
        AdditiveCode c = product_gauge(cyclic_code(15, 2, {0, 1, 5}));
        auto desc = from_additive(c);
        REQUIRE(desc.str() == "[[15,3,4,3]]_2");
        REQUIRE(desc.purity() == Purity::pure);

        auto g = grow_k(c, desc);
        CHECK(g.desc.str() == "[[15,4,3,3]]_2");
        CHECK(g.desc.d().is_exact());
        CHECK(g.desc.purity() == Purity::pure);
        CHECK(g.code.dim_p() == c.dim_p() - 2);
        CHECK(mentions(g.desc, "thm10"));

        auto rd = from_additive(g.code);
        CHECK(rd.K() == g.desc.K());
        CHECK(rd.R() == g.desc.R());
        CHECK(rd.d() == Distance::exact(3));
        CHECK(rd.purity() == Purity::pure);
    }
    SECTION("R = q boundary lands on a stabilizer code") {
        AdditiveCode c = product_gauge(cyclic_code(15, 2, {1, 3, 5}));
        auto desc = from_additive(c);
        REQUIRE(desc.str() == "[[15,6,1,3]]_2");
        REQUIRE(desc.purity() == Purity::pure);

        auto g = grow_k(c, desc);
        CHECK(g.desc.str() == "[[15,7,0,3]]_2");
        CHECK(g.desc.is_stabilizer());
        CHECK(from_additive(g.code).str() == "[[15,7,0,3]]_2");
    }
    SECTION("impure gauge groups are rejected") {
        AdditiveCode c = grid_gauge();
        auto desc = from_additive(c);
        REQUIRE(desc.str() == "[[9,1,4,3]]_2");
        REQUIRE(desc.purity() == Purity::impure);
        CHECK_THROWS_AS(grow_k(c, desc), std::invalid_argument);
    }
    SECTION("stabilizer inputs have no gauge to trade") {
        AdditiveCode c = five_qubit_gauge();
        auto desc = from_additive(c);
        CHECK_THROWS_AS(grow_k(c, desc), std::invalid_argument);
    }
}

TEST_CASE("shrink then grow is a parameter identity on pure codes", "[propagation]") {
    std::mt19937 rng(20260815);
    const FieldSpec& f2 = make_field(2, 1);
    const FieldSpec& f3 = make_field(3, 1);
    int trips = 0, impure_mids = 0;
    for (int t = 0; t < 20000 && trips < 100; ++t) {
        const FieldSpec& f = (t % 2 == 0) ? f2 : f3;
        int n = 3 + int(rng() % 4);
        AdditiveCode c = random_additive(f, n, 1 + int(rng() % 5), rng);
        if (c.dim_p() == 0) continue;
        auto desc = from_additive(c, small_budget);
        if (!desc.is_pure() || desc.K().is_one()) continue;

        auto s = shrink_k(c, desc);
        auto mid = from_additive(s.code, small_budget);
        if (!mid.is_pure()) {
            // the shrink rule bounds purity by min{d, d'}; when the true
            // distance grows past it the grow rule is not applicable
            ++impure_mids;
            continue;
        }
        auto g = grow_k(s.code, mid);
        auto back = from_additive(g.code, small_budget);
        CHECK(back.n() == desc.n());
        CHECK(back.K() == desc.K());
        CHECK(back.R() == desc.R());
        CHECK(back.d() == desc.d());
        ++trips;
    }
    CHECK(trips == 100);
    CHECK(impure_mids <= 10);
}

TEST_CASE("lengthening by a free position", "[propagation]") {
    const FieldSpec& f2 = make_field(2, 1);
    SECTION("length-15 gauge code gains a position") {
        AdditiveCode c = product_gauge(cyclic_code(15, 2, {1, 3}));
        auto desc = from_additive(c);
        auto e = extend_n(c, desc);
        CHECK(e.desc.str() == "[[16,4,3,>=3]]_2");
        CHECK(e.desc.pure_to() == 1);
        CHECK(e.desc.purity() == Purity::impure);
        CHECK(e.code.dim_p() == c.dim_p() + 1);
        CHECK(mentions(e.desc, "thm16"));

        // the appended position carries a literal weight-1 generator
        std::vector<felt> a(16, 0), b(16, 0);
        a[15] = 1;
        SympVector w(f2, std::move(a), std::move(b));
        CHECK(swt(w) == 1);
        CHECK(e.code.contains(w));

        auto rd = from_additive(e.code);
        CHECK(rd.K() == e.desc.K());
        CHECK(rd.R() == e.desc.R());
        CHECK(rd.d().value >= 3);
        CHECK(rd.pure_to() == 1);
    }
    SECTION("stabilizer codes extend with r = 0 intact") {
        AdditiveCode c = five_qubit_gauge();
        auto e = extend_n(c, from_additive(c));
        CHECK(e.desc.str() == "[[6,1,0,>=3]]_2");
        auto rd = from_additive(e.code);
        CHECK(rd.d().value >= 3);
        CHECK(rd.is_stabilizer());
    }
    SECTION("K = 1 inputs are rejected") {
        AdditiveCode c = five_qubit_gauge();
        auto s = shrink_k(c, from_additive(c));
        CHECK_THROWS_AS(extend_n(s.code, s.desc), std::invalid_argument);
    }
    SECTION("extension and symplectic dual commute on small ambients") {
        std::mt19937 rng(97);
        int checked = 0;
        for (std::uint32_t qi = 0; qi < 3; ++qi) {
            const FieldSpec& f = qi == 0 ? make_field(2, 1)
                               : qi == 1 ? make_field(3, 1)
                                         : make_field(2, 2);
            for (int n = 2; n <= 4; ++n)
                for (int t = 0; t < 8; ++t) {
                    AdditiveCode c = random_additive(f, n, 1 + int(rng() % (2 * n)), rng);
                    AdditiveCode lhs = detail::append_free_position(symp_dual(c));
                    AdditiveCode rhs = symp_dual(detail::append_free_position(c));
                    CHECK(lhs == rhs);
                    ++checked;
                }
        }
        CHECK(checked == 72);
    }
}

TEST_CASE("bracket-level trades on descriptors", "[propagation]") {
    auto pure1543 = SubsystemDescriptor::from_brackets(2, 15, 4, 3, Distance::exact(3), 5,
                                                       Purity::pure, true);
    auto grid = SubsystemDescriptor::from_brackets(2, 9, 1, 4, Distance::exact(3), 2,
                                                   Purity::impure, true);
    SECTION("one step of the linear shrink rule") {
        auto out = shrink_k_linear(pure1543);
        CHECK(out.str() == "[[15,3,4,>=3]]_2");
        CHECK(out.pure_to() == 3);
        CHECK(out.purity() == Purity::unknown);
        CHECK(out.is_linear());
        CHECK(mentions(out, "thm9"));
    }
    SECTION("k = 1 keeps the distance when pure, rejects when impure") {
        auto five = SubsystemDescriptor::from_brackets(2, 5, 1, 0, Distance::exact(3), 4,
                                                       Purity::pure, true);
        auto out = shrink_k_linear(five);
        CHECK(out.str() == "[[5,0,1,3]]_2");
        CHECK(out.d().is_exact());
        CHECK(out.purity() == Purity::pure);
        CHECK_THROWS_AS(shrink_k_linear(out), std::invalid_argument);   // k = 0
        CHECK_THROWS_AS(shrink_k_linear(grid), std::invalid_argument);  // k = 1 impure
    }
    SECTION("nonlinear descriptors are rejected") {
        auto additive_only = SubsystemDescriptor::from_brackets(4, 6, 2, 1, Distance::exact(2),
                                                                std::nullopt, Purity::unknown,
                                                                false);
        CHECK_THROWS_AS(shrink_k_linear(additive_only), std::invalid_argument);
        CHECK_THROWS_AS(grow_k_linear(additive_only), std::invalid_argument);
    }
    SECTION("one step of the linear grow rule") {
        auto pure1534 = SubsystemDescriptor::from_brackets(2, 15, 3, 4, Distance::exact(3), 4,
                                                           Purity::pure, true);
        auto out = grow_k_linear(pure1534);
        CHECK(out.str() == "[[15,4,3,3]]_2");
        CHECK(out.d().is_exact());
        CHECK(out.purity() == Purity::pure);
        CHECK(out.pure_to() == 4);
        CHECK(mentions(out, "thm11"));
        CHECK_THROWS_AS(grow_k_linear(grid), std::invalid_argument);  // impure
        auto stab = SubsystemDescriptor::from_brackets(2, 15, 7, 0, Distance::exact(3), 3,
                                                       Purity::pure, true);
        CHECK_THROWS_AS(grow_k_linear(stab), std::invalid_argument);  // r = 0
    }
    SECTION("parametric chains must re-establish purity") {
        auto shrunk = shrink_k_linear(pure1543);
        CHECK(shrunk.purity() == Purity::unknown);
        CHECK_THROWS_AS(grow_k_linear(shrunk), std::invalid_argument);
    }
}

TEST_CASE("dimension trades at the Singleton boundary", "[propagation]") {
    auto mds = SubsystemDescriptor::from_brackets(9, 9, 5, 0, Distance::exact(3), 3,
                                                  Purity::pure, true);
    REQUIRE(singleton_check(mds).is_mds);
    SECTION("the full trade chain keeps d and purity") {
        auto r0 = mds_trade(mds, 0);
        CHECK(r0.str() == "[[9,5,0,3]]_9");
        auto r3 = mds_trade(mds, 3);
        CHECK(r3.str() == "[[9,2,3,3]]_9");
        CHECK(r3.d().is_exact());
        CHECK(r3.purity() == Purity::pure);
        CHECK(r3.is_linear());
        CHECK(singleton_check(r3).is_mds);
        CHECK(mentions(r3, "thm15"));
        auto r5 = mds_trade(mds, 5);  // inclusive upper boundary
        CHECK(r5.str() == "[[9,0,5,3]]_9");
        CHECK(r5.purity() == Purity::pure);
    }
    SECTION("range and precondition rejections") {
        CHECK_THROWS_AS(mds_trade(mds, 6), std::invalid_argument);
        CHECK_THROWS_AS(mds_trade(mds, -1), std::invalid_argument);
        auto loose = SubsystemDescriptor::from_brackets(2, 15, 7, 0, Distance::exact(3), 3,
                                                        Purity::pure, true);
        CHECK_THROWS_AS(mds_trade(loose, 1), std::invalid_argument);  // slack 4
        auto bound = SubsystemDescriptor::from_brackets(9, 9, 5, 0, Distance::at_least(3), 3,
                                                        Purity::pure, true);
        CHECK_THROWS_AS(mds_trade(bound, 1), std::invalid_argument);  // inexact d
        auto gauged = SubsystemDescriptor::from_brackets(9, 9, 2, 3, Distance::exact(3), 3,
                                                         Purity::pure, true);
        CHECK_THROWS_AS(mds_trade(gauged, 1), std::invalid_argument);  // r != 0
    }
}

TEST_CASE("stabilizer codes open into subsystem families", "[propagation]") {
    auto stab = SubsystemDescriptor::from_brackets(2, 15, 7, 0, Distance::exact(3), 3,
                                                   Purity::pure, true);
    SECTION("generic path emits a distance bound") {
        auto out = stabilizer_to_subsystem(stab, 3);
        CHECK(out.str() == "[[15,4,3,>=3]]_2");
        CHECK(out.purity() == Purity::unknown);
        CHECK(out.pure_to() == 3);
        CHECK(mentions(out, "cor12"));
    }
    SECTION("the identity and the range gate") {
        CHECK(stabilizer_to_subsystem(stab, 0) == stab);
        CHECK_THROWS_AS(stabilizer_to_subsystem(stab, 7), std::invalid_argument);
        CHECK_THROWS_AS(stabilizer_to_subsystem(stab, -1), std::invalid_argument);
        auto gauged = SubsystemDescriptor::from_brackets(2, 15, 4, 3, Distance::exact(3), 3,
                                                         Purity::pure, true);
        CHECK_THROWS_AS(stabilizer_to_subsystem(gauged, 1), std::invalid_argument);
    }
    SECTION("Singleton-tight stabilizers route through the exact trade") {
        auto mds = SubsystemDescriptor::from_brackets(9, 9, 5, 0, Distance::exact(3), 3,
                                                      Purity::pure, true);
        auto out = stabilizer_to_subsystem(mds, 2);
        CHECK(out.str() == "[[9,3,2,3]]_9");
        CHECK(out.d().is_exact());
        CHECK(out.purity() == Purity::pure);
        CHECK(mentions(out, "thm15"));
    }
    SECTION("agreement with the directly constructed gauge family") {
        auto parent = bch_family(BchFamilySpec{2, 4, 3, 0, Flavor::euclidean});
        REQUIRE(parent.str() == "[[15,7,0,3]]_2");
        auto derived = stabilizer_to_subsystem(parent, 3);
        auto direct = bch_family(BchFamilySpec{2, 4, 3, 3, Flavor::euclidean});
        CHECK(direct.str() == "[[15,4,3,3]]_2");
        CHECK(*derived.k() == *direct.k());
        CHECK(*derived.r() == *direct.r());
        CHECK(derived.d().value <= direct.d().value);
    }
    SECTION("pure subsystem codes fold back into stabilizers") {
        auto pure1543 = SubsystemDescriptor::from_brackets(2, 15, 4, 3, Distance::exact(3), 5,
                                                           Purity::pure, true);
        auto out = subsystem_to_stabilizer(pure1543);
        CHECK(out.str() == "[[15,7,0,3]]_2");
        CHECK(out.d().is_exact());
        CHECK(out.purity() == Purity::pure);
        CHECK(out.pure_to() == 5);

        auto grid = SubsystemDescriptor::from_brackets(2, 9, 1, 4, Distance::exact(3), 2,
                                                       Purity::impure, true);
        CHECK_THROWS_AS(subsystem_to_stabilizer(grid), std::invalid_argument);
        CHECK(subsystem_to_stabilizer(out) == out);
    }
}

TEST_CASE("shortening pure codes", "[propagation]") {
    SECTION("one position and one distance unit come off") {
        auto in = SubsystemDescriptor::from_brackets(2, 16, 4, 3, Distance::exact(4), 4,
                                                     Purity::pure, true);
        auto out = shorten(in);
        CHECK(out.str() == "[[15,5,3,3]]_2");
        CHECK(out.d().is_exact());
        CHECK(out.purity() == Purity::pure);
        CHECK(out.pure_to() == 3);
        CHECK(mentions(out, "thm17"));
    }
    SECTION("distance kind is carried through") {
        auto in = SubsystemDescriptor::from_brackets(2, 31, 11, 0, Distance::at_least(5), 5,
                                                     Purity::pure, true);
        auto out = shorten(in);
        CHECK(out.str() == "[[30,12,0,>=4]]_2");
        CHECK_FALSE(out.d().is_exact());
    }
    SECTION("precondition gates") {
        auto grid = SubsystemDescriptor::from_brackets(2, 9, 1, 4, Distance::exact(3), 2,
                                                       Purity::impure, true);
        CHECK_THROWS_AS(shorten(grid), std::invalid_argument);
        auto d1 = SubsystemDescriptor::from_brackets(2, 5, 2, 1, Distance::exact(1), 1,
                                                     Purity::pure, true);
        CHECK_THROWS_AS(shorten(d1), std::invalid_argument);
    }
    SECTION("n = 2 boundary") {
        auto in = SubsystemDescriptor::from_brackets(2, 2, 0, 0, Distance::exact(2),
                                                     std::nullopt, Purity::unknown, true);
        REQUIRE(in.purity() == Purity::pure);  // K = 1 is always pure
        CHECK(shorten(in).str() == "[[1,1,0,1]]_2");
    }
    SECTION("extension output fails the purity re-check") {
        AdditiveCode c = product_gauge(cyclic_code(15, 2, {1, 3}));
        auto e = extend_n(c, from_additive(c));
        CHECK(e.desc.purity() == Purity::impure);
        CHECK_THROWS_AS(shorten(e.desc), std::invalid_argument);
    }
}

TEST_CASE("combining pure codes on disjoint blocks", "[propagation]") {
    auto d1 = SubsystemDescriptor::from_brackets(2, 15, 7, 0, Distance::exact(3), 3,
                                                 Purity::pure, true);
    auto d2 = SubsystemDescriptor::from_brackets(2, 7, 1, 0, Distance::exact(3), 3,
                                                 Purity::pure, true);
    SECTION("the r-indexed family") {
        auto family = combine_disjoint(d1, d2);
        REQUIRE(family.size() == 7);  // strict r < k1 + r1
        CHECK(family[0].str() == "[[21,7,0,>=3]]_2");
        CHECK(family[3].str() == "[[21,4,3,>=3]]_2");
        CHECK(family[6].str() == "[[21,1,6,>=3]]_2");
        for (const auto& out : family) {
            CHECK(out.purity() == Purity::unknown);
            CHECK_FALSE(out.pure_to().has_value());
            CHECK(*out.k() + *out.r() == 7);
            CHECK(mentions(out, "thm18"));
        }
    }
    SECTION("a vacuous distance bound floors at 1") {
        auto family = combine_disjoint(d2, d1);  // k2 + r2 = 7 = n1
        REQUIRE(family.size() == 1);
        CHECK(family[0].str() == "[[15,1,0,>=1]]_2");
    }
    SECTION("precondition gates") {
        auto ternary = SubsystemDescriptor::from_brackets(3, 8, 4, 0, Distance::exact(2), 2,
                                                          Purity::pure, true);
        CHECK_THROWS_AS(combine_disjoint(ternary, ternary), std::invalid_argument);
        auto wide = SubsystemDescriptor::from_brackets(2, 31, 20, 0, Distance::exact(5), 5,
                                                       Purity::pure, true);
        CHECK_THROWS_AS(combine_disjoint(d1, wide), std::invalid_argument);  // k2 > n1
        auto shaky = SubsystemDescriptor::from_brackets(2, 7, 1, 0, Distance::exact(3),
                                                        std::nullopt, Purity::unknown, true);
        CHECK_THROWS_AS(combine_disjoint(d1, shaky), std::invalid_argument);  // purity
    }
}

TEST_CASE("combining nested codes of equal length", "[propagation]") {
    auto d1 = SubsystemDescriptor::from_brackets(2, 15, 7, 0, Distance::exact(3), 3,
                                                 Purity::pure, true);
    auto d2 = SubsystemDescriptor::from_brackets(2, 15, 4, 3, Distance::exact(2), 2,
                                                 Purity::pure, true);
    SECTION("the inclusive r-indexed family") {
        auto family = combine_nested(d1, d2, true);
        REQUIRE(family.size() == 15);  // 0 <= r <= k1+k2+r1+r2 = 14
        CHECK(family[0].str() == "[[30,14,0,>=3]]_2");
        CHECK(family[14].str() == "[[30,0,14,>=3]]_2");
        CHECK(family[14].purity() == Purity::pure);
        for (const auto& out : family) {
            CHECK(out.purity() == Purity::pure);
            CHECK(out.pure_to() == 3);
            CHECK(mentions(out, "thm19"));
        }
    }
    SECTION("the distance bound sees both orders") {
        CHECK(combine_nested(d1, d2, true)[0].d().value == 3);  // min{3, 2*2}
        CHECK(combine_nested(d2, d1, true)[0].d().value == 2);  // min{2, 2*3}
    }
    SECTION("nonbinary fields work at prime size") {
        auto a = SubsystemDescriptor::from_brackets(5, 5, 1, 0, Distance::exact(3), 3,
                                                    Purity::pure, true);
        auto b = SubsystemDescriptor::from_brackets(5, 5, 1, 0, Distance::exact(2), 2,
                                                    Purity::pure, true);
        auto family = combine_nested(a, b, true);
        REQUIRE(family.size() == 3);
        CHECK(family[1].str() == "[[10,1,1,>=3]]_5");  // min{3, 2*2}
        CHECK(family[1].is_linear());
    }
    SECTION("precondition gates") {
        CHECK_THROWS_AS(combine_nested(d1, d2, false), std::invalid_argument);
        auto shorter = SubsystemDescriptor::from_brackets(2, 7, 1, 0, Distance::exact(3), 3,
                                                          Purity::pure, true);
        CHECK_THROWS_AS(combine_nested(d1, shorter, true), std::invalid_argument);
        auto ternary = SubsystemDescriptor::from_brackets(3, 15, 4, 0, Distance::exact(2), 2,
                                                          Purity::pure, true);
        CHECK_THROWS_AS(combine_nested(d1, ternary, true), std::invalid_argument);
        auto shaky = SubsystemDescriptor::from_brackets(2, 15, 4, 3, Distance::exact(2),
                                                        std::nullopt, Purity::unknown, true);
        CHECK_THROWS_AS(combine_nested(d1, shaky, true), std::invalid_argument);
    }
}

TEST_CASE("rule applications carry their tier", "[propagation]") {
    CHECK(rule_tier("thm8") == RuleTier::constructive);
    CHECK(rule_tier("thm10") == RuleTier::constructive);
    CHECK(rule_tier("thm16") == RuleTier::constructive);
    CHECK(rule_tier("thm9") == RuleTier::parametric);
    CHECK(rule_tier("cor12") == RuleTier::parametric);
    CHECK(rule_tier("thm19") == RuleTier::parametric);
    CHECK_THROWS_AS(rule_tier("thm7"), std::invalid_argument);

    auto d1 = SubsystemDescriptor::from_brackets(2, 15, 7, 0, Distance::exact(3), 3,
                                                 Purity::pure, true);
    auto out = stabilizer_to_subsystem(d1, 2);
    auto app = make_application("cor12", {d1}, out);
    CHECK(app.rule_id == "cor12");
    CHECK(app.tier == RuleTier::parametric);
    REQUIRE(app.inputs.size() == 1);
    CHECK(app.inputs[0] == "[[15,7,0,3]]_2");
    CHECK(app.output == out);
    CHECK(std::string(tier_name(app.tier)) == "parametric");
    CHECK(std::string(tier_name(RuleTier::constructive)) == "constructive");
}

TEST_CASE("randomized re-derivation of every constructive rule", "[propagation][slow]") {
    std::mt19937 rng(424242);
    const FieldSpec& f2 = make_field(2, 1);
    const FieldSpec& f3 = make_field(3, 1);
    const FieldSpec& f4 = make_field(2, 2);
    int applied = 0, shrinks = 0, grows = 0, extends = 0;
    while (applied < 500) {
        const FieldSpec& f = [&]() -> const FieldSpec& {
            switch (rng() % 3) {
                case 0: return f2;
                case 1: return f3;
                default: return f4;
            }
        }();
        int n = 2 + int(rng() % 7);
        AdditiveCode c = random_additive(f, n, 1 + int(rng() % 6), rng);
        if (c.dim_p() == 0) continue;
        auto desc = from_additive(c, small_budget);

        switch (rng() % 3) {
            case 0: {
                if (desc.K().is_one()) continue;
                if (desc.K().exp == 1 && !desc.is_pure()) continue;
                auto out = shrink_k(c, desc);
                auto rd = from_additive(out.code, small_budget);
                CHECK(rd.K() == out.desc.K());
                CHECK(rd.R() == out.desc.R());
                if (out.desc.d().is_exact())
                    CHECK(rd.d() == out.desc.d());
                else
                    CHECK(rd.d().value >= out.desc.d().value);
                ++shrinks;
                break;
            }
            case 1: {
                if (desc.R().is_one() || !desc.is_pure()) continue;
                if (c.dim_p() == 2) continue;  // output would be the zero code
                auto out = grow_k(c, desc);
                auto rd = from_additive(out.code, small_budget);
                CHECK(rd.K() == out.desc.K());
                CHECK(rd.R() == out.desc.R());
                CHECK(rd.d().value == desc.d().value);  // distance exactly preserved
                CHECK(rd.purity() == Purity::pure);
                ++grows;
                break;
            }
            default: {
                if (desc.K().is_one()) continue;
                auto out = extend_n(c, desc);
                auto rd = from_additive(out.code, small_budget);
                CHECK(rd.K() == out.desc.K());
                CHECK(rd.R() == out.desc.R());
                CHECK(rd.n() == desc.n() + 1);
                CHECK(rd.d().value >= out.desc.d().value);
                CHECK(rd.pure_to() == 1);
                ++extends;
                break;
            }
        }
        ++applied;
    }
    CHECK(applied == 500);
    CHECK(shrinks >= 100);
    CHECK(grows >= 30);
    CHECK(extends >= 100);
}

TEST_CASE("linear exact inputs never breach the Singleton bound", "[propagation]") {
    // exact-d outputs of every descriptor-level rule stay within the bound
    auto stab = SubsystemDescriptor::from_brackets(2, 15, 7, 0, Distance::exact(3), 3,
                                                   Purity::pure, true);
    auto mds = SubsystemDescriptor::from_brackets(9, 9, 5, 0, Distance::exact(3), 3,
                                                  Purity::pure, true);
    std::vector<SubsystemDescriptor> outputs;
    outputs.push_back(shrink_k_linear(stab));
    outputs.push_back(subsystem_to_stabilizer(stabilizer_to_subsystem(mds, 2)));
    outputs.push_back(shorten(SubsystemDescriptor::from_brackets(
        2, 16, 4, 3, Distance::exact(4), 4, Purity::pure, true)));
    for (long long r = 0; r <= 5; ++r) outputs.push_back(mds_trade(mds, r));
    auto g = grow_k_linear(SubsystemDescriptor::from_brackets(2, 15, 3, 4, Distance::exact(3),
                                                              4, Purity::pure, true));
    outputs.push_back(g);
    for (const auto& out : outputs) {
        auto sres = singleton_check(out);
        CHECK(sres.slack >= 0);
        if (out.d().is_exact()) CHECK_FALSE(sres.indeterminate);
    }
}
