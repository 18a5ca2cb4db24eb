#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "subsys/registry.hpp"

using namespace subsys;

namespace {

SubsystemDescriptor mk(std::uint32_t q, std::uint32_t n, std::uint32_t k, std::uint32_t r,
                       Distance d, Purity purity = Purity::unknown, bool linear = true,
                       std::vector<std::string> prov = {"test fixture"}) {
    return SubsystemDescriptor::from_brackets(q, n, k, r, d, std::nullopt, purity, linear,
                                              std::move(prov));
}

bool has_exact(const Registry& reg, int n, long long k, long long r, long long d) {
    const CodeRecord* rec = reg.find(n, k, r);
    return rec && rec->descriptor.d() == Distance::exact(d);
}

}  // namespace

TEST_CASE("seeding covers the documented families", "[registry]") {
    SECTION("binary table up to length 15") {
        Registry reg = seed(2, 15);
        CHECK(has_exact(reg, 15, 4, 3, 3));
        CHECK(has_exact(reg, 15, 6, 1, 3));
        CHECK(has_exact(reg, 15, 7, 0, 3));
        CHECK(has_exact(reg, 5, 1, 0, 3));  // perfect five-qubit code
        CHECK(reg.audit() == 0);
        for (const CodeRecord& rec : reg.records()) {
            CHECK(rec.descriptor.q() == 2);
            CHECK_FALSE(rec.provenance().empty());
        }
    }
    SECTION("ternary table up to length 9") {
        Registry reg = seed(3, 9);
        CHECK(has_exact(reg, 8, 4, 2, 2));
        CHECK(has_exact(reg, 9, 1, 4, 3));
        CHECK(reg.audit() == 0);
    }
    SECTION("an empty budget seeds nothing") {
        CHECK(seed(2, 15, EnumBudget{0}).empty());
    }
    SECTION("alphabet and length gates") {
        CHECK_THROWS_AS(seed(6, 15), std::invalid_argument);
        CHECK_THROWS_AS(seed(11, 15), std::invalid_argument);
        CHECK_THROWS_AS(seed(2, 129), std::invalid_argument);
        CHECK_THROWS_AS(seed(2, 0), std::invalid_argument);
    }
}

TEST_CASE("pareto insertion keeps one best record per key", "[registry]") {
    Registry reg(2, 15);
    SECTION("larger distance replaces") {
        CHECK(reg.insert(mk(2, 15, 4, 3, Distance::at_least(2))));
        CHECK(reg.insert(mk(2, 15, 4, 3, Distance::exact(3))));
        CHECK(reg.size() == 1);
        CHECK(has_exact(reg, 15, 4, 3, 3));
        // an equal-d lower bound does not displace the exact record
        CHECK_FALSE(reg.insert(mk(2, 15, 4, 3, Distance::at_least(3))));
        CHECK(has_exact(reg, 15, 4, 3, 3));
    }
    SECTION("exactness replaces a bound of equal value") {
        CHECK(reg.insert(mk(2, 15, 4, 3, Distance::at_least(3))));
        CHECK(reg.insert(mk(2, 15, 4, 3, Distance::exact(3))));
        CHECK(has_exact(reg, 15, 4, 3, 3));
    }
    SECTION("shorter provenance replaces at an exact tie") {
        CHECK(reg.insert(mk(2, 15, 4, 3, Distance::exact(3), Purity::unknown, true,
                            {"step one", "step two"})));
        CHECK(reg.insert(mk(2, 15, 4, 3, Distance::exact(3), Purity::unknown, true, {"direct"})));
        CHECK(reg.find(15, 4, 3)->provenance() == std::vector<std::string>{"direct"});
        CHECK_FALSE(reg.insert(mk(2, 15, 4, 3, Distance::exact(3), Purity::unknown, true,
                                  {"another", "long", "chain"})));
    }
    SECTION("records past n_max are out of scope") {
        CHECK_FALSE(reg.insert(mk(2, 16, 4, 3, Distance::exact(3))));
        CHECK(reg.empty());
    }
    SECTION("keys require integral k and r") {
        const FieldSpec& f4 = field_of_order(4);
        SubsystemDescriptor odd(4, 5, PrimePower{f4.p(), 3}, PrimePower{f4.p(), 0},
                                Distance::exact(1), std::nullopt, Purity::unknown, false, {});
        Registry reg4(4, 15);
        CHECK_THROWS_AS(reg4.insert(odd), std::invalid_argument);
    }
    SECTION("alphabet mismatch is rejected") {
        CHECK_THROWS_AS(reg.insert(mk(3, 8, 4, 2, Distance::exact(2))), std::invalid_argument);
    }
    SECTION("a Singleton-violating linear exact record is refused") {
        CHECK_THROWS_AS(reg.insert(mk(2, 5, 4, 0, Distance::exact(3))), std::logic_error);
        // the same parameters pass as a mere lower bound or nonlinear claim
        CHECK(reg.insert(mk(2, 5, 4, 0, Distance::at_least(3))));
    }
}

TEST_CASE("closure reaches a fixed point", "[registry]") {
    SECTION("a single MDS stabilizer opens into the full trade chain") {
        Registry reg(9, 9);
        reg.insert(mk(9, 9, 5, 0, Distance::exact(3), Purity::pure));
        Registry closed = close(reg, {"thm15"});
        REQUIRE(closed.size() == 6);
        for (long long r = 0; r <= 5; ++r) {
            REQUIRE(closed.contains(9, 5 - r, r));
            CHECK(closed.find(9, 5 - r, r)->descriptor.d() == Distance::exact(3));
        }
        CHECK(closed.audit() == 0);
    }
    SECTION("closing twice changes nothing") {
        Registry closed = close(seed(2, 15));
        CHECK(close(closed) == closed);
        CHECK(closed.audit() == 0);
        for (const CodeRecord& rec : closed.records()) CHECK_FALSE(rec.provenance().empty());
    }
    SECTION("closure can only improve the seeded records") {
        Registry seeded = seed(2, 15);
        Registry closed = close(seeded);
        CHECK(closed.size() >= seeded.size());
        for (const CodeRecord& rec : seeded.records()) {
            auto key = rec.key();
            const CodeRecord* after =
                closed.find(int(std::get<1>(key)), std::get<2>(key), std::get<3>(key));
            REQUIRE(after != nullptr);
            CHECK(after->descriptor.d().value >= rec.descriptor.d().value);
        }
        CHECK(has_exact(closed, 15, 4, 3, 3));
        CHECK(has_exact(closed, 15, 6, 1, 3));
    }
    SECTION("the rule set is validated up front") {
        Registry reg(2, 15);
        CHECK_THROWS_AS(close(reg, {"thm8"}), std::invalid_argument);
        CHECK_THROWS_AS(close(reg, {"thm16"}), std::invalid_argument);
        CHECK_THROWS_AS(close(reg, {"thm19"}), std::invalid_argument);
        CHECK_THROWS_AS(close(reg, {"thm99"}), std::invalid_argument);
    }
    SECTION("the disjoint combiner respects the length cap") {
        Registry reg(2, 25);
        reg.insert(mk(2, 15, 7, 0, Distance::exact(3), Purity::pure));
        reg.insert(mk(2, 7, 1, 0, Distance::exact(3), Purity::pure));
        Registry closed = close(reg, {"thm18"}, 1);
        for (long long r = 0; r < 7; ++r) {
            REQUIRE(closed.contains(21, 7 - r, r));
            CHECK(closed.find(21, 7 - r, r)->descriptor.d().value >= 3);
        }
        CHECK(closed.contains(13, 1, 0));  // the short code combined with itself
        for (const CodeRecord& rec : closed.records()) CHECK(rec.descriptor.n() <= 25);
    }
}

TEST_CASE("emitting tables", "[registry]") {
    SECTION("empty registries emit headers only") {
        Registry reg(2, 15);
        CHECK(emit(reg, TableFormat::csv) == "q,n,k,r,d,pure_to,purity,linear,provenance\n");
        CHECK(emit(reg, TableFormat::markdown) ==
              "| n | k | r | d | purity | provenance |\n|--:|--:|--:|:--|:--|:--|\n");
        CHECK(emit(reg, TableFormat::json).empty());
    }
    SECTION("rows are ordered by (n, k, r) and show the distance kind") {
        Registry reg(2, 31);
        reg.insert(mk(2, 15, 6, 1, Distance::exact(3)));
        reg.insert(mk(2, 15, 4, 3, Distance::at_least(3)));
        reg.insert(mk(2, 5, 1, 0, Distance::exact(3)));
        std::string csv = emit(reg, TableFormat::csv);
        std::size_t l1 = csv.find('\n') + 1;
        std::size_t l2 = csv.find('\n', l1) + 1;
        CHECK(csv.substr(l1, csv.find('\n', l1) - l1).rfind("2,5,1,0,3", 0) == 0);
        CHECK(csv.substr(l2, csv.find('\n', l2) - l2).rfind("2,15,4,3,>=3", 0) == 0);
        std::string md = emit(reg, TableFormat::markdown);
        CHECK(md.find("| 15 | 4 | 3 | >=3 |") != std::string::npos);
        CHECK(md.find("| 15 | 6 | 1 | 3 |") != std::string::npos);
    }
    SECTION("format names parse") {
        CHECK(parse_table_format("csv") == TableFormat::csv);
        CHECK(parse_table_format("json") == TableFormat::json);
        CHECK(parse_table_format("markdown") == TableFormat::markdown);
        CHECK_THROWS_AS(parse_table_format("tsv"), std::invalid_argument);
    }
    SECTION("json lines reimport losslessly") {
        Registry closed = close(seed(3, 9));
        Registry back = import_json_lines(3, 9, emit(closed, TableFormat::json));
        CHECK(back == closed);
        // a smaller length cap silently drops the oversized rows
        Registry trimmed = import_json_lines(3, 8, emit(closed, TableFormat::json));
        CHECK(trimmed.size() < closed.size());
        for (const CodeRecord& rec : trimmed.records()) CHECK(rec.descriptor.n() <= 8);
    }
}
