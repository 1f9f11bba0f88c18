#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "escatter/geometry.hpp"
#include "escatter/types.hpp"

namespace escatter {

enum class Command
{
    kSpinlessSweep,
    kSphereSweep,
    kVnCompare,
    kSpinSweep,
    kPostselectRange,
    kEquator,
};

enum class OutputFormat
{
    kCsv,
    kJson,
};

Command parse_command(std::string_view name);
std::string_view to_string(Command c);
GridKind parse_geometry(std::string_view name);
std::string_view to_string(GridKind g);

struct RunConfig
{
    Command command = Command::kSpinlessSweep;
    std::vector<double> energies_ev;
    double extension_nm = 100;
    double k_scale = 1.0;
    std::size_t grid_points = 512;
    std::size_t grid_cap = 4096;
    SpinChannel channel = SpinChannel::kSpinless;
    GridKind geometry = GridKind::kRings;
    std::vector<double> theta_r;
    double delta_theta_mrad = 0;  //!< equator pixel width override; 0 = 2/(K L)
    std::filesystem::path output;
    OutputFormat format = OutputFormat::kCsv;
    unsigned threads = 0;         //!< 0 = hardware concurrency
    std::filesystem::path density_dump;
};

// Parse "a,b,c" or "log:first:last:count" into a list of reals.
std::vector<double> parse_real_list(std::string_view text);

// Read a flat "key = value" file; '#' starts a comment. Keys are returned
// as written (dashes and underscores are interchangeable in apply_setting).
std::map<std::string, std::string> read_config_file(std::filesystem::path const& path);

// Apply one setting; throws ConfigError naming the key on bad values.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

// Throws ConfigError if a field is out of range.
void validate(RunConfig const& config);

//---------------------------------------------------------------------------//
// Output tables
//---------------------------------------------------------------------------//

using TableCell = std::variant<double, std::int64_t, std::string>;

struct Table
{
    std::vector<std::string> columns;
    std::vector<std::vector<TableCell>> rows;
    std::vector<bool> row_failed;
};

// Column documentation for --help.
std::string describe_columns();

// Stable hash of the fields that determine the output (excludes threads
// and paths).
std::string config_hash(RunConfig const& config);

// Compute the table for a validated config.
Table compute_table(RunConfig const& config);

std::string render_csv(Table const& table, RunConfig const& config);
std::string render_json(Table const& table, RunConfig const& config);

// Write through a temporary file in the same directory and rename it.
void write_atomic(std::filesystem::path const& path, std::string const& content);

// Validate, compute, write. Returns 0 on success, 2 for an invalid
// configuration and 3 if any row failed numerically (the table is still
// written, with the failure in its status column).
int run(RunConfig const& config, std::ostream& out, std::ostream& err);

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumeric = 3;

}  // namespace escatter
