#pragma once

#include "phyloinv/oracle.hpp"
#include "phyloinv/pipeline.hpp"
#include "phyloinv/tripod.hpp"

#include <json.hpp>

#include <string>

namespace phyloinv {

using Json = nlohmann::json;

/// Plain number when |x| <= 2^53, decimal string otherwise.
Json to_json(const Integer& x);
Json to_json(const GroupElement& x);
Json to_json(const Flow& f);
Json to_json(const Binomial& b);
/// {"leaves", "newick", "edges": [[parent, child], ...]} with 1-based node
/// ids in canonical edge order.
Json to_json(const RootedTree& t);
Json to_json(const IntegerMatrix& m);
Json to_json(const AdmissibleMatrix& m);
Json to_json(const InvariantSet& s);
Json to_json(const JoinCount& c);
Json to_json(const LatticeInfo& info);
Json to_json(const VerificationReport& r);

/// One line per binomial: "x[0,1,2]*x[1,2,0] - x[0,2,1]*x[1,0,2]".
std::string to_algebra_text(const InvariantSet& s);
std::string to_algebra_text(const Binomial& b);

} // namespace phyloinv
