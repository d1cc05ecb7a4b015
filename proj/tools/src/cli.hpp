#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <orbitsp/group.hpp>

namespace orbitsp::cli {

inline constexpr const char* kToolName = "orbitsp";

enum class Command {
  Orbit,
  Hull,
  Minkowski,
  Cone,
  VoronoiCheck,
  CoxeterCheck,
  SpCheck,
  Theorem2,
  PolarVerify,
  Catalog,
};

const std::vector<std::pair<std::string, Command>>& command_names();
std::string command_name(Command c);

struct RunConfig {
  Command command = Command::Theorem2;
  std::optional<std::string> input_path;
  std::optional<std::string> model_name;
  std::uint64_t seed = 42;
  std::optional<double> tolerance;       // default 1e-9, or the group file's own value
  std::optional<std::size_t> samples;    // default 1000 where a command samples
  std::optional<std::string> output_path;
  std::optional<std::string> export_off_path;
};

// Problems with what the user handed us: exit code 1.
class InputError : public Error {
 public:
  using Error::Error;
};

struct GroupInput {
  FiniteGroup group;
  std::vector<Vec> vectors;  // optional "vectors" field
};

/// Parses a group file: {"name", "dim", "generators": [[[row]...]...],
/// "tolerance"?, "vectors"?}. Entries are numbers or decimal strings.
GroupInput parse_group_json(const std::string& text, const std::optional<double>& tol_override);

// Writes the catalog entry in the group file format, entries as strings.
std::string group_fixture_json(const std::string& catalog_name);

/// Executes one command. The report goes to config.output_path or to out;
/// one-line diagnostics go to err. Returns 0 (verdict computed), 1 (input
/// error) or 2 (internal inconsistency).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace orbitsp::cli
