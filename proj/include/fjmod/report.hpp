#pragma once
// Deterministic JSON reports: ordered keys, exact values as strings, no
// timestamps or timings (wall-clock goes to stderr), so a fixed configuration
// reproduces byte-identical output.

#include <fstream>
#include <iostream>

#include "json.hpp"

#include "fjmod/verify.hpp"

namespace fjmod {

using ojson = nlohmann::ordered_json;

inline ojson provenance(const Sl2Setup& S) {
    ojson p;
    p["q"] = S.k.q;
    p["psi"] = "zeta_p^Tr(x)";
    p["kappa"] = S.k.kappa;
    p["conductor"] = S.N;
    return p;
}

inline ojson to_json(const Suite& s) {
    ojson out;
    out["suite"] = s.name;
    out["pass"] = s.pass();
    ojson checks = ojson::array();
    for (const auto& c : s.checks) {
        ojson cc;
        cc["name"] = c.name;
        cc["pass"] = c.pass;
        if (!c.detail.empty()) cc["detail"] = c.detail;
        checks.push_back(cc);
    }
    out["checks"] = checks;
    return out;
}

inline ojson to_json(const TheoremReport& r) {
    ojson out;
    out["report"] = r.name;
    ojson cases = ojson::array();
    for (const auto& c : r.cases) {
        ojson cc;
        cc["case"] = c.pi;
        cc["dim_sigma"] = c.dim_sigma;
        cc["dim"] = c.dim_a;
        cc["dim_per_class"] = c.dim_per_class;
        cc["tau_compatible"] = c.tau_compatible;
        ojson tf = ojson::array();
        for (bool b : c.tau_fixed) tf.push_back(b);
        cc["tau_fixed"] = tf;
        cc["verdict"] = to_string(c.verdict);
        if (c.convolution_checked) cc["convolution_commutes"] = c.convolution_commutes;
        if (!c.witness.empty()) cc["witness"] = c.witness;
        cases.push_back(cc);
    }
    out["cases"] = cases;
    out["all_proven"] = r.all_proven();
    return out;
}

inline ojson chartable_json(int q) {
    Sl2Setup S(q);
    auto irreps = sl2_irrep_list(S);
    TableCheck tc = sl2_verify_tables(S, irreps);
    ojson j;
    j["provenance"] = provenance(S);
    ojson class_names = ojson::array();
    for (size_t c = 0; c < S.cd.reps.size(); ++c) {
        const auto& r = S.cd.reps[c];
        std::ostringstream os;
        os << "[[" << r(0, 0) << "," << r(0, 1) << "],[" << r(1, 0) << "," << r(1, 1) << "]]";
        class_names.push_back(os.str());
    }
    j["classes"] = class_names;
    ojson sizes = ojson::array();
    for (long long s : S.cd.sizes) sizes.push_back(s);
    j["class_sizes"] = sizes;
    ojson rows = ojson::array();
    for (size_t i = 0; i < irreps.size(); ++i) {
        ojson row;
        row["irrep"] = irreps[i].name;
        row["dim"] = irreps[i].rep.dim;
        ojson vals = ojson::array();
        for (const auto& v : tc.computed[i]) vals.push_back(v.str());
        row["values"] = vals;
        rows.push_back(row);
    }
    j["rows"] = rows;
    j["matches_tables"] = tc.ok;
    j["sqrt_branch"] = tc.branch;
    return j;
}

inline ojson sp4_cosets_json(int q) {
    Sl2Setup S(q);
    auto G = Sp4Model::make(S.k);
    std::vector<FMat<4>> jgens;
    for (const auto& g : S.G.generators()) jgens.push_back(G->embed(g, {0, 0, 0}));
    jgens.push_back(G->embed(S.G.id(), {1, 0, 0}));
    jgens.push_back(G->embed(S.G.id(), {0, 1, 0}));
    jgens.push_back(G->embed(S.G.id(), {0, 0, 1}));
    auto part = coset_partition(S.k, G->hooks.listed, jgens);
    ojson j;
    j["provenance"] = provenance(S);
    j["group"] = "sp4";
    ojson reps = ojson::array();
    for (size_t i = 0; i < G->hooks.listed.size(); ++i) {
        ojson r;
        r["index"] = i;
        r["family"] = G->hooks.listed_family[i];
        r["class"] = part.class_of[i];
        reps.push_back(r);
    }
    j["listed"] = reps;
    ojson classes = ojson::array();
    long long jorder = (long long)S.G.order() * q * q * q, total = 0;
    for (size_t c = 0; c < part.orbit_size.size(); ++c) {
        ojson cl;
        cl["class"] = c;
        cl["canonical_listed_index"] = part.canonical[c];
        cl["size"] = part.orbit_size[c] * jorder;
        total += part.orbit_size[c] * jorder;
        classes.push_back(cl);
    }
    j["classes"] = classes;
    j["group_order"] = G->order();
    j["covers_group"] = total == G->order();
    return j;
}

inline void emit(const ojson& j, const std::string& out_path) {
    std::string text = j.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out_path, std::ios::binary);
        f << text;
    }
}

}  // namespace fjmod
