/*
 * Command line front end: construct subsystem codes from classical cyclic
 * codes, verify claimed parameters, apply propagation rules, and emit
 * best-known-parameter tables.  All file interchange is JSON; see --help
 * of each subcommand for the expected shape.
 */

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "subsys/constructions.hpp"
#include "subsys/cyclotomic.hpp"
#include "subsys/galois.hpp"
#include "subsys/json_io.hpp"
#include "subsys/lincode.hpp"
#include "subsys/propagation.hpp"
#include "subsys/registry.hpp"
#include "subsys/subsystem.hpp"

namespace {

using nlohmann::json;

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    in >> j;
    return j;
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << text;
}

subsys::EnumBudget pick_budget(std::uint64_t flag) {
    if (flag > 0) return subsys::EnumBudget{flag};
    return subsys::EnumBudget::from_env();
}

subsys::Flavor parse_flavor(const std::string& s) {
    if (s == "euclid" || s == "euclidean") return subsys::Flavor::euclidean;
    if (s == "herm" || s == "hermitian") return subsys::Flavor::hermitian;
    throw std::invalid_argument("flavor must be euclid or herm, got \"" + s + "\"");
}

subsys::DefiningSet set_from_json(const json& j, int n, std::uint32_t q) {
    std::vector<int> members = j.get<std::vector<int>>();
    return subsys::DefiningSet::from_coset_leaders(n, q, members);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"subsystem code constructor and parameter verifier"};
    app.require_subcommand(1);
    std::uint64_t max_enum = 0;
    app.add_option("--max-enum", max_enum,
                   "enumeration step budget (overrides SUBSYS_MAX_ENUM)");

    // coset --n 31 --q 4 --x 3
    auto* cmd_coset = app.add_subcommand("coset", "print one cyclotomic coset");
    int co_n = 0, co_x = 0;
    std::uint32_t co_q = 2;
    cmd_coset->add_option("--n", co_n, "modulus")->required();
    cmd_coset->add_option("--q", co_q, "multiplier alphabet")->required();
    cmd_coset->add_option("--x", co_x, "coset representative")->required();
    cmd_coset->callback([&] {
        json j = {{"n", co_n},
                  {"q", co_q},
                  {"x", co_x},
                  {"members", subsys::cyclotomic_coset(co_x, co_n, co_q)}};
        std::cout << j.dump() << "\n";
    });

    // bch-ds --n 31 --q 4 --delta 5
    auto* cmd_bchds = app.add_subcommand("bch-ds", "print a narrow-sense BCH defining set");
    int bd_n = 0, bd_delta = 2, bd_b = 1;
    std::uint32_t bd_q = 2;
    cmd_bchds->add_option("--n", bd_n, "code length")->required();
    cmd_bchds->add_option("--q", bd_q, "alphabet")->required();
    cmd_bchds->add_option("--delta", bd_delta, "designed distance")->required();
    cmd_bchds->add_option("--b", bd_b, "first consecutive root exponent");
    cmd_bchds->callback([&] {
        subsys::DefiningSet ds = subsys::bch_defining_set(bd_n, bd_q, bd_delta, bd_b);
        json j = {{"n", bd_n}, {"q", bd_q}, {"members", ds.members()}};
        std::cout << j.dump() << "\n";
    });

    // verify-classical --code file.json
    auto* cmd_verify = app.add_subcommand(
        "verify-classical", "dimension and minimum weight of a linear code");
    std::string vc_path;
    cmd_verify->add_option("--code", vc_path, "linear code JSON {q, n, gen}")->required();
    cmd_verify->callback([&] {
        subsys::LinearCode c = subsys::linear_from_json(read_json_file(vc_path));
        json j = {{"k", c.k()}};
        if (auto d = c.min_weight(pick_budget(max_enum)))
            j["d_exact"] = *d;
        else
            j["d_lower_bound"] = 1;  // enumeration over budget, nothing sharper known
        std::cout << j.dump() << "\n";
    });

    // construct euclid|herm|bch|cyclic
    auto* cmd_construct = app.add_subcommand("construct", "build a subsystem code descriptor");
    cmd_construct->require_subcommand(1);

    auto add_parent_sub = [&](const char* name, const char* help, subsys::Flavor flavor) {
        auto* sub = cmd_construct->add_subcommand(name, help);
        auto path = std::make_shared<std::string>();
        sub->add_option("--code", *path, "gauge parent code JSON {q, n, gen}")->required();
        sub->callback([&, path, flavor] {
            subsys::LinearCode c = subsys::linear_from_json(read_json_file(*path));
            subsys::SubsystemDescriptor d =
                flavor == subsys::Flavor::euclidean
                    ? subsys::euclidean_construction(c, pick_budget(max_enum))
                    : subsys::hermitian_construction(c, pick_budget(max_enum));
            std::cout << subsys::descriptor_to_json(d).dump() << "\n";
        });
    };
    add_parent_sub("euclid", "trace-symplectic product construction C x C",
                   subsys::Flavor::euclidean);
    add_parent_sub("herm", "hermitian construction over GF(q^2)", subsys::Flavor::hermitian);

    auto* cmd_bch = cmd_construct->add_subcommand("bch", "narrow-sense primitive BCH family");
    subsys::BchFamilySpec bch_spec;
    std::string bch_flavor = "euclid";
    cmd_bch->add_option("--q", bch_spec.q, "subsystem code alphabet")->required();
    cmd_bch->add_option("--m", bch_spec.m, "extension degree")->required();
    cmd_bch->add_option("--delta", bch_spec.delta, "designed distance")->required();
    cmd_bch->add_option("--r", bch_spec.r, "gauge dimension");
    cmd_bch->add_option("--flavor", bch_flavor, "euclid or herm");
    cmd_bch->callback([&] {
        bch_spec.flavor = parse_flavor(bch_flavor);
        subsys::SubsystemDescriptor d = subsys::bch_family(bch_spec, pick_budget(max_enum));
        std::cout << subsys::descriptor_to_json(d).dump() << "\n";
    });

    auto* cmd_cyc = cmd_construct->add_subcommand(
        "cyclic", "cyclic code pair; spec JSON {n, q, t_d, t, flavor}");
    std::string cyc_path;
    cmd_cyc->add_option("--spec", cyc_path, "spec JSON path")->required();
    cmd_cyc->callback([&] {
        json j = read_json_file(cyc_path);
        int n = j.at("n").get<int>();
        std::uint32_t q = j.at("q").get<std::uint32_t>();
        subsys::CyclicSubsysSpec spec{set_from_json(j.at("t_d"), n, q),
                                      set_from_json(j.at("t"), n, q),
                                      parse_flavor(j.value("flavor", "euclid"))};
        subsys::SubsystemDescriptor d = subsys::cyclic_subsystem(spec, pick_budget(max_enum));
        std::cout << subsys::descriptor_to_json(d).dump() << "\n";
    });

    // enumerate-T --n 31 --q 4 --delta 5
    auto* cmd_enum = app.add_subcommand(
        "enumerate-T", "admissible gauge sets for a narrow-sense BCH pair");
    int en_n = 0, en_delta = 2;
    std::uint32_t en_q = 2;
    std::string en_flavor = "euclid";
    cmd_enum->add_option("--n", en_n, "code length")->required();
    cmd_enum->add_option("--q", en_q, "alphabet")->required();
    cmd_enum->add_option("--delta", en_delta, "designed distance")->required();
    cmd_enum->add_option("--flavor", en_flavor, "euclid or herm");
    cmd_enum->callback([&] {
        subsys::Flavor flavor = parse_flavor(en_flavor);
        subsys::DefiningSet bch = subsys::bch_defining_set(en_n, en_q, en_delta);
        subsys::DefiningSet t_d = subsys::flavor_dual_ds(bch, flavor);
        auto choices = subsys::admissible_T_enumerator(t_d, flavor);
        json rows = json::array();
        for (const subsys::AdmissibleChoice& c : choices)
            rows.push_back({{"r", c.r}, {"t", c.t.members()}, {"t_full", c.t_full.members()}});
        json j = {{"n", en_n},       {"q", en_q},          {"delta", en_delta},
                  {"flavor", subsys::flavor_name(flavor)}, {"t_d", t_d.members()},
                  {"choices", rows}};
        std::cout << j.dump() << "\n";
    });

    // derive --rule thm8 --in code.json [--in2 other.json] [--r 3] [--nested]
    auto* cmd_derive = app.add_subcommand("derive", "apply one propagation rule");
    std::string dr_rule, dr_in, dr_in2;
    long long dr_r = -1;
    bool dr_nested = false;
    cmd_derive->add_option("--rule", dr_rule, "thm8..thm19 or cor12")->required();
    cmd_derive->add_option("--in", dr_in, "input code or descriptor JSON")->required();
    cmd_derive->add_option("--in2", dr_in2, "second descriptor (thm18, thm19)");
    cmd_derive->add_option("--r", dr_r, "gauge target (cor12, thm15) or family member pick");
    cmd_derive->add_flag("--nested", dr_nested,
                         "assert the gauge code of --in2 sits inside the one of --in (thm19)");
    cmd_derive->callback([&] {
        using namespace subsys;
        EnumBudget budget = pick_budget(max_enum);
        if (rule_tier(dr_rule) == RuleTier::constructive) {
            AdditiveCode c = additive_from_json(read_json_file(dr_in));
            SubsystemDescriptor desc = from_additive(c, budget);
            DerivedCode out = dr_rule == "thm8"    ? shrink_k(c, desc)
                              : dr_rule == "thm10" ? grow_k(c, desc)
                                                   : extend_n(c, desc);
            json j = {{"descriptor", descriptor_to_json(out.desc)},
                      {"code", additive_to_json(out.code)}};
            std::cout << j.dump() << "\n";
            return;
        }
        SubsystemDescriptor in = descriptor_from_json(read_json_file(dr_in));
        std::vector<SubsystemDescriptor> family;
        if (dr_rule == "thm9") {
            family.push_back(shrink_k_linear(in));
        } else if (dr_rule == "thm11") {
            family.push_back(grow_k_linear(in));
        } else if (dr_rule == "thm15") {
            if (dr_r < 0) throw std::invalid_argument("derive: rule thm15 needs --r");
            family.push_back(mds_trade(in, dr_r));
        } else if (dr_rule == "cor12") {
            family.push_back(dr_r >= 0 ? stabilizer_to_subsystem(in, dr_r)
                                       : subsystem_to_stabilizer(in));
        } else if (dr_rule == "thm17") {
            family.push_back(shorten(in));
        } else if (dr_rule == "thm18" || dr_rule == "thm19") {
            if (dr_in2.empty())
                throw std::invalid_argument("derive: rule " + dr_rule + " needs --in2");
            SubsystemDescriptor in2 = descriptor_from_json(read_json_file(dr_in2));
            if (dr_rule == "thm18") {
                family = combine_disjoint(in, in2);
            } else {
                if (!dr_nested)
                    throw std::invalid_argument(
                        "derive: rule thm19 needs --nested to assert the subcode witness");
                family = combine_nested(in, in2, dr_nested);
            }
            if (dr_r >= 0) {
                if (std::size_t(dr_r) >= family.size())
                    throw std::invalid_argument("derive: --r past the family range");
                family = {family[std::size_t(dr_r)]};
            }
        } else {
            throw std::invalid_argument("derive: unknown rule " + dr_rule);
        }
        if (family.size() == 1) {
            std::cout << descriptor_to_json(family[0]).dump() << "\n";
        } else {
            for (const SubsystemDescriptor& d : family)
                std::cout << descriptor_to_json(d).dump() << "\n";
        }
    });

    // table --q 2 --n-max 63 --format markdown --out table.md
    auto* cmd_table = app.add_subcommand("table", "seeded and closed best-parameter table");
    std::uint32_t tb_q = 2;
    int tb_nmax = 15, tb_cap = 32;
    std::string tb_format = "markdown", tb_out, tb_rules;
    bool tb_noclose = false;
    cmd_table->add_option("--q", tb_q, "alphabet")->required();
    cmd_table->add_option("--n-max", tb_nmax, "maximum length")->required();
    cmd_table->add_option("--format", tb_format, "csv, json, or markdown");
    cmd_table->add_option("--out", tb_out, "output path (stdout when absent)");
    cmd_table->add_option("--rules", tb_rules,
                          "comma-separated closure rules (default thm9,thm11,cor12,thm15,thm17,thm18)");
    cmd_table->add_option("--iterations", tb_cap, "closure iteration cap");
    cmd_table->add_flag("--no-close", tb_noclose, "emit the raw seeded table");
    cmd_table->callback([&] {
        using namespace subsys;
        EnumBudget budget = max_enum > 0 ? EnumBudget{max_enum} : seed_budget_default();
        Registry reg = seed(tb_q, tb_nmax, budget);
        if (!tb_noclose) {
            std::vector<std::string> rules = default_closure_rules();
            if (!tb_rules.empty()) {
                rules.clear();
                std::istringstream in(tb_rules);
                std::string id;
                while (std::getline(in, id, ',')) rules.push_back(id);
            }
            reg = close(std::move(reg), rules, tb_cap);
        }
        write_output(emit(reg, parse_table_format(tb_format)), tb_out);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
