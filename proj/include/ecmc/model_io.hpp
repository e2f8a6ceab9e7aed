#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "ecmc/cod.hpp"
#include "ecmc/epistemic.hpp"

namespace ecmc {

// Parsed model file before team materialization.  cmd_deps needs signature
// and functions even when the function set is cyclic, so recursivity is not
// enforced at this stage.
struct RawModelFile {
    SignaturePtr sig;
    StructuralFunctionSet functions;
    nlohmann::json team_rows;  // as written in the file
    nlohmann::json actual_raw; // row object, team index, or null
};

// Fully validated model: recursive functions, compliant sorted team,
// optional actual state contained in the team.
struct LoadedModel {
    SignaturePtr sig;
    StructuralFunctionSet functions;
    std::vector<Valuation> team;
    std::optional<Valuation> actual;
};

// Reads and parses a JSON document, mapping stream failures to IoError and
// malformed text to ParseError with a byte offset.
nlohmann::json load_json_file(const std::string& path);

RawModelFile parse_model_json(const nlohmann::json& j);

// Solves exogenous-only team rows, compliance-checks full rows, resolves
// the actual state.  Unless allow_empty_team is set, an empty team is a
// validation error.
LoadedModel finalize_model(const RawModelFile& raw, bool allow_empty_team = false);

LoadedModel load_model_file(const std::string& path, bool allow_empty_team = false);

nlohmann::json model_to_json(const LoadedModel& m);
void write_model_file(const std::string& path, const LoadedModel& m);

// Views; each validates the extra requirement it needs.
EpistemicCausalModel make_epistemic(const LoadedModel& m);
PointedModel make_pointed(const LoadedModel& m);
CausalTeam make_causal_team(const LoadedModel& m);

LoadedModel to_loaded(const EpistemicCausalModel& m, std::optional<Valuation> actual);
LoadedModel to_loaded(const CausalTeam& t);

} // namespace ecmc
