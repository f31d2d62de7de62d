#include "phyloinv/json_io.hpp"

#include <map>

namespace phyloinv {

Json to_json(const Integer& x) {
    static const Integer limit = Integer(1) << 53;
    if (abs(x) <= limit)
        return Json(static_cast<long long>(x.get_si()));
    return Json(x.get_str());
}

Json to_json(const GroupElement& x) { return Json(x.residues()); }

Json to_json(const Flow& f) {
    Json out = Json::array();
    for (const GroupElement& v : f.values())
        out.push_back(to_json(v));
    return out;
}

namespace {

Json flows(const std::vector<Flow>& side) {
    Json out = Json::array();
    for (const Flow& f : side)
        out.push_back(to_json(f));
    return out;
}

} // namespace

Json to_json(const Binomial& b) { return Json{{"lhs", flows(b.lhs())}, {"rhs", flows(b.rhs())}, {"degree", b.degree()}}; }

Json to_json(const RootedTree& t) {
    Json edges = Json::array();
    for (const DirectedEdge& e : t.edges())
        edges.push_back({e.parent + 1, e.child + 1});
    return Json{{"leaves", t.leaf_count()}, {"newick", t.tree().to_newick()}, {"edges", std::move(edges)}};
}

Json to_json(const IntegerMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

Json to_json(const AdmissibleMatrix& m) {
    return Json{{"group", m.group().to_string()}, {"entries", m.entries()}, {"degree", m.degree()}};
}

Json to_json(const InvariantSet& s) {
    Json inv = Json::array();
    for (std::size_t i = 0; i < s.binomials.size(); ++i) {
        Json b = to_json(s.binomials[i]);
        b["provenance"] = to_string(s.provenance[i]);
        inv.push_back(std::move(b));
    }
    return Json{{"group", s.group.to_string()},
                {"tree", to_json(s.tree)},
                {"codim", to_json(codim(s.tree.tree(), s.group))},
                {"invariants", std::move(inv)}};
}

Json to_json(const JoinCount& c) {
    return Json{{"left_leaves", c.left_leaves}, {"right_leaves", c.right_leaves}, {"family1", c.family1},
                {"family2", c.family2},         {"family3", c.family3},           {"codim", c.codim}};
}

Json to_json(const LatticeInfo& info) {
    return Json{{"dim_M0_tilde", info.dim_m0_tilde},
                {"expected_dim", info.expected_dim},
                {"index", info.index ? to_json(*info.index) : Json("infinite")},
                {"expected_index", to_json(info.expected_index)},
                {"ok", info.ok()}};
}

Json to_json(const VerificationReport& r) {
    Json out{{"count_ok", r.count_ok},
             {"kernel_membership_ok", r.kernel_membership_ok},
             {"spans_ok", r.spans_ok},
             {"degree_bound_ok", r.degree_bound_ok},
             {"expected_codim", to_json(r.expected_codim)},
             {"actual_count", r.actual_count},
             {"kernel_rank", r.kernel_rank},
             {"generated_rank", r.generated_rank},
             {"torsion", to_json(r.torsion)},
             {"max_degree", r.max_degree},
             {"degree_bound", r.degree_bound},
             {"failures", r.failures},
             {"pass", r.pass()}};
    out["lattice_info"] = r.lattice_info ? to_json(*r.lattice_info) : Json(nullptr);
    return out;
}

namespace {

std::string monomial(const std::vector<Flow>& side) {
    if (side.empty())
        return "1";
    std::map<Flow, int> powers;
    for (const Flow& f : side)
        ++powers[f];
    std::string out;
    for (const auto& [f, k] : powers) {
        if (!out.empty())
            out += '*';
        out += "x[";
        for (std::size_t e = 0; e < f.size(); ++e) {
            if (e)
                out += ',';
            out += to_string(f[e]);
        }
        out += ']';
        if (k > 1)
            out += '^' + std::to_string(k);
    }
    return out;
}

} // namespace

std::string to_algebra_text(const Binomial& b) { return monomial(b.lhs()) + " - " + monomial(b.rhs()); }

std::string to_algebra_text(const InvariantSet& s) {
    std::string out;
    for (const Binomial& b : s.binomials)
        out += to_algebra_text(b) + '\n';
    return out;
}

} // namespace phyloinv
