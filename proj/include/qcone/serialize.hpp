#pragma once

#include <string>
#include <string_view>

#include "json.hpp"
#include "qcone/quasicone.hpp"
#include "qcone/search.hpp"
#include "qcone/strategy.hpp"

namespace qcone {

using Json = nlohmann::ordered_json;

// integers stay numbers, infinities become "inf" / "-inf"
Json to_json(ExtInt x);
ExtInt ext_from_json(const Json& j);

// {"rank", "heisenberg", "entries"} with null on the diagonal
Json to_json(const QuasiconeMatrix& c);
QuasiconeMatrix matrix_from_json(const Json& j);

// canonical document text; parse(serialize(c)) == c and re-serializing is byte-exact
std::string serialize_matrix(const QuasiconeMatrix& c);
// accepts the JSON document or the plain row text ('*' diagonal)
QuasiconeMatrix parse_matrix(std::string_view text);

// "-1d", "0", "-d", "2d" -> delta coefficient
std::int64_t parse_start_weight(std::string_view text);

Json gap_json(const QuasiconeMatrix& c);
Json defect_json(const QuasiconeMatrix& c);  // null when some gap component is +inf
Json to_json(const AffineRoot& r);
Json to_json(const StrategyState& s);

// full=false keeps the summary, the residual and the forest; full=true adds every node
Json to_json(const SearchReport& rep, bool full = false);
Json to_json(const TableCheck& chk);
Json to_json(const ReplayResult& r);

}  // namespace qcone
