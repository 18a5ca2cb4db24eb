#pragma once

/*
 * JSON interchange for classical codes, additive symplectic codes, and
 * subsystem descriptors.  Field elements travel as raw table indices
 * (integers below q).
 *
 *   linear code   {"q", "n", "gen": [[row], ...]}
 *   additive code {"q", "n", "gens": [{"a": [...], "b": [...]}, ...]}
 *   descriptor    {"q", "n", "K": {"p","exp"}, "R": {"p","exp"},
 *                  "d": {"kind","value"}, "k", "r" (when integral),
 *                  "pure_to", "purity", "linear", "provenance"}
 */

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "subsys/galois.hpp"
#include "subsys/lincode.hpp"
#include "subsys/subsystem.hpp"
#include "subsys/symplectic.hpp"

namespace subsys {

namespace detail {

inline std::vector<felt> row_from_json(const nlohmann::json& j, std::uint32_t q,
                                       const char* who) {
    std::vector<felt> row;
    row.reserve(j.size());
    for (const auto& e : j) {
        long long v = e.get<long long>();
        if (v < 0 || v >= (long long)q)
            throw std::invalid_argument(std::string(who) + ": element " + std::to_string(v) +
                                        " outside GF(" + std::to_string(q) + ")");
        row.push_back(felt(v));
    }
    return row;
}

}  // namespace detail

inline nlohmann::json linear_to_json(const LinearCode& c) {
    nlohmann::json j;
    j["q"] = c.field().q();
    j["n"] = c.n();
    auto rows = nlohmann::json::array();
    for (int i = 0; i < c.k(); ++i)
        rows.push_back(c.generator().row_vec(std::size_t(i)));
    j["gen"] = std::move(rows);
    return j;
}

inline LinearCode linear_from_json(const nlohmann::json& j) {
    const FieldSpec& f = field_of_order(j.at("q").get<std::uint32_t>());
    int n = j.at("n").get<int>();
    if (n < 1) throw std::invalid_argument("linear_from_json(): length must be positive");
    std::vector<std::vector<felt>> rows;
    for (const auto& r : j.at("gen")) {
        auto row = detail::row_from_json(r, f.q(), "linear_from_json()");
        if (int(row.size()) != n)
            throw std::invalid_argument("linear_from_json(): row length != n");
        rows.push_back(std::move(row));
    }
    return LinearCode::from_generators(f, n, rows);
}

inline nlohmann::json additive_to_json(const AdditiveCode& c) {
    nlohmann::json j;
    j["q"] = c.field().q();
    j["n"] = c.n();
    auto gens = nlohmann::json::array();
    for (const SympVector& g : c.gens()) {
        nlohmann::json e;
        e["a"] = g.a;
        e["b"] = g.b;
        gens.push_back(std::move(e));
    }
    j["gens"] = std::move(gens);
    return j;
}

inline AdditiveCode additive_from_json(const nlohmann::json& j) {
    const FieldSpec& f = field_of_order(j.at("q").get<std::uint32_t>());
    int n = j.at("n").get<int>();
    if (n < 1) throw std::invalid_argument("additive_from_json(): length must be positive");
    std::vector<SympVector> gens;
    for (const auto& g : j.at("gens")) {
        auto a = detail::row_from_json(g.at("a"), f.q(), "additive_from_json()");
        auto b = detail::row_from_json(g.at("b"), f.q(), "additive_from_json()");
        if (int(a.size()) != n || int(b.size()) != n)
            throw std::invalid_argument("additive_from_json(): generator halves must have length n");
        gens.emplace_back(f, std::move(a), std::move(b));
    }
    return AdditiveCode::from_vectors(f, n, gens);
}

inline nlohmann::json distance_to_json(const Distance& d) {
    return {{"kind", d.is_exact() ? "exact" : "at_least"}, {"value", d.value}};
}

inline Distance distance_from_json(const nlohmann::json& j) {
    std::string kind = j.at("kind").get<std::string>();
    long long value = j.at("value").get<long long>();
    if (kind == "exact") return Distance::exact(value);
    if (kind == "at_least") return Distance::at_least(value);
    throw std::invalid_argument("distance_from_json(): unknown kind \"" + kind + "\"");
}

inline Purity purity_from_name(const std::string& s) {
    for (Purity p : {Purity::pure, Purity::impure, Purity::unknown})
        if (s == purity_name(p)) return p;
    throw std::invalid_argument("purity_from_name(): unknown purity \"" + s + "\"");
}

inline nlohmann::json descriptor_to_json(const SubsystemDescriptor& d) {
    nlohmann::json j;
    j["q"] = d.q();
    j["n"] = d.n();
    j["K"] = {{"p", d.K().p}, {"exp", d.K().exp}};
    j["R"] = {{"p", d.R().p}, {"exp", d.R().exp}};
    if (d.has_brackets()) {
        j["k"] = *d.k();
        j["r"] = *d.r();
    }
    j["d"] = distance_to_json(d.d());
    if (d.pure_to())
        j["pure_to"] = *d.pure_to();
    else
        j["pure_to"] = nullptr;
    j["purity"] = purity_name(d.purity());
    j["linear"] = d.is_linear();
    j["provenance"] = d.provenance();
    return j;
}

inline SubsystemDescriptor descriptor_from_json(const nlohmann::json& j) {
    std::uint32_t q = j.at("q").get<std::uint32_t>();
    std::uint32_t n = j.at("n").get<std::uint32_t>();
    Distance d = distance_from_json(j.at("d"));
    std::optional<long long> pure_to;
    if (j.contains("pure_to") && !j.at("pure_to").is_null())
        pure_to = j.at("pure_to").get<long long>();
    Purity purity = Purity::unknown;
    if (j.contains("purity")) purity = purity_from_name(j.at("purity").get<std::string>());
    bool linear = j.value("linear", false);
    std::vector<std::string> prov;
    if (j.contains("provenance")) prov = j.at("provenance").get<std::vector<std::string>>();

    if (j.contains("K")) {
        PrimePower K{j.at("K").at("p").get<std::uint32_t>(),
                     j.at("K").at("exp").get<std::uint32_t>()};
        PrimePower R{j.at("R").at("p").get<std::uint32_t>(),
                     j.at("R").at("exp").get<std::uint32_t>()};
        return SubsystemDescriptor(q, n, K, R, d, pure_to, purity, linear, std::move(prov));
    }
    // bracket-only form: k and r count logical and gauge q-dits
    std::uint32_t k = j.at("k").get<std::uint32_t>();
    std::uint32_t r = j.at("r").get<std::uint32_t>();
    return SubsystemDescriptor::from_brackets(q, n, k, r, d, pure_to, purity, linear,
                                              std::move(prov));
}

}  // namespace subsys
