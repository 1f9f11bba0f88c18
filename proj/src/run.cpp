#include "escatter/run.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <system_error>
#include <unistd.h>

#include <json.hpp>

#include "escatter/constants.hpp"
#include "escatter/density_matrix.hpp"
#include "escatter/entropy.hpp"
#include "escatter/error.hpp"
#include "escatter/kinematics.hpp"
#include "escatter/parallel.hpp"
#include "escatter/spin.hpp"

namespace escatter {
namespace {

std::string trim(std::string_view s)
{
    auto const first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
        return {};
    auto const last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

std::string normalize_key(std::string_view key)
{
    std::string out = trim(key);
    std::replace(out.begin(), out.end(), '_', '-');
    if (out.starts_with("--"))
        out.erase(0, 2);
    return out;
}

double parse_real(std::string_view text, std::string_view key)
{
    std::string const s = trim(text);
    double value = 0;
    auto const [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
    {
        throw ConfigError("invalid number '" + s + "' for '" + std::string(key) + "'");
    }
    return value;
}

std::size_t parse_count(std::string_view text, std::string_view key)
{
    std::string const s = trim(text);
    std::size_t value = 0;
    auto const [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
    {
        throw ConfigError("invalid count '" + s + "' for '" + std::string(key) + "'");
    }
    return value;
}

std::string format_real(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string format_cell(TableCell const& cell)
{
    if (auto const* d = std::get_if<double>(&cell))
        return format_real(*d);
    if (auto const* i = std::get_if<std::int64_t>(&cell))
        return std::to_string(*i);
    return std::get<std::string>(cell);
}

std::string csv_escape(std::string const& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s)
    {
        if (c == '"')
            out += '"';
        out += c == '\n' ? ' ' : c;
    }
    return out + '"';
}

std::string row_status(std::string const& status, std::string const& message)
{
    return message.empty() ? status : status + ": " + message;
}

// Theta_r default: the first ten cells, then 50 log-spaced cell counts up to
// the full half shell.
std::vector<double> default_theta_r(ScatterContext const& ctx)
{
    double const max_range = constants::kPi / 2 - ctx.epsilon;
    auto const n_max = static_cast<std::size_t>(max_range / ctx.delta_theta);
    std::vector<std::size_t> counts;
    for (std::size_t n = 1; n <= std::min<std::size_t>(10, n_max); ++n)
        counts.push_back(n);
    if (n_max > 10)
    {
        for (int i = 1; i <= 50; ++i)
        {
            double const t = std::log(10.0)
                             + (std::log(static_cast<double>(n_max)) - std::log(10.0)) * i / 50;
            counts.push_back(static_cast<std::size_t>(std::llround(std::exp(t))));
        }
    }
    std::sort(counts.begin(), counts.end());
    counts.erase(std::unique(counts.begin(), counts.end()), counts.end());
    std::vector<double> out;
    for (auto n : counts)
        out.push_back(std::min(max_range, n * ctx.delta_theta));
    if (out.empty() || out.back() < max_range)
        out.push_back(max_range);
    return out;
}

Table sweep_table(RunConfig const& config, GridKind geometry)
{
    Table table;
    table.columns = {"energy_ev", "channel", "geometry", "n_cells", "entropy_bits",
                     "modified_bits", "jaynes_bits", "status"};
    auto const rows = sweep_energies(config.energies_ev, config.extension_nm,
                                     config.channel, geometry, config.k_scale,
                                     config.threads);
    for (auto const& r : rows)
    {
        table.rows.push_back({r.energy_ev, std::string(to_string(config.channel)),
                              std::string(to_string(geometry)),
                              static_cast<std::int64_t>(r.n_cells), r.entropy,
                              r.modified, r.jaynes, row_status(r.status, r.message)});
        table.row_failed.push_back(r.status != "ok");
    }
    return table;
}

Table spin_table(RunConfig const& config)
{
    Table table;
    table.columns = {"energy_ev", "n_full", "n_half", "spinless_bits", "parallel_bits",
                     "parallel_modified_bits", "antiparallel_bits",
                     "antiparallel_modified_bits", "parallel_minus_spinless",
                     "antiparallel_minus_parallel", "status"};
    struct Row
    {
        std::int64_t n_full = 0, n_half = 0;
        double spinless = 0;
        SpinEntropyResult par, ap;
        std::string status = "ok";
    };
    std::vector<Row> rows(config.energies_ev.size());
    parallel_for(rows.size(), config.threads, [&](std::size_t i) {
        try
        {
            auto const ctx = make_context(config.energies_ev[i], config.extension_nm,
                                          config.k_scale);
            auto const full = ring_grid(ctx, SpinChannel::kSpinless);
            auto const half = ring_grid(ctx, SpinChannel::kParallel);
            rows[i].n_full = static_cast<std::int64_t>(full.n_cells);
            rows[i].n_half = static_cast<std::int64_t>(half.n_cells);
            rows[i].spinless = entropy_distinguishable(ctx, full);
            rows[i].par = entropy_parallel(ctx, half);
            rows[i].ap = entropy_antiparallel(ctx, half);
        }
        catch (DomainError const& e)
        {
            rows[i].status = row_status("domain_error", e.what());
        }
        catch (std::exception const& e)
        {
            rows[i].status = row_status("numerical_error", e.what());
        }
    });
    for (std::size_t i = 0; i < rows.size(); ++i)
    {
        auto const& r = rows[i];
        table.rows.push_back({config.energies_ev[i], r.n_full, r.n_half, r.spinless,
                              r.par.entropy, r.par.modified, r.ap.entropy,
                              r.ap.modified, r.par.modified - r.spinless,
                              r.ap.entropy - r.par.entropy, r.status});
        table.row_failed.push_back(r.status != "ok");
    }
    return table;
}

Table vn_table(RunConfig const& config)
{
    Table table;
    table.columns = {"energy_ev", "n_grid", "s_von_neumann", "s_diagonal",
                     "s_ring_matched", "s_ring_detector", "abs_diff", "status"};
    for (double e : config.energies_ev)
    {
        std::vector<TableCell> row{e};
        try
        {
            auto const ctx = make_context(e, config.extension_nm, config.k_scale);
            auto const cmp = vn_compare(ctx, config.grid_points, config.grid_cap,
                                        config.threads);
            if (!config.density_dump.empty())
            {
                auto const dm = build_meridian_matrix(ctx, config.grid_points,
                                                      config.grid_cap, config.threads);
                auto path = config.density_dump;
                if (config.energies_ev.size() > 1)
                    path += "." + format_real(e);
                write_density_csv(dm, eigen_spectrum(dm), path);
            }
            row.insert(row.end(), {static_cast<std::int64_t>(cmp.n_grid), cmp.von_neumann,
                                   cmp.diagonal, cmp.ring_matched, cmp.ring_detector,
                                   std::abs(cmp.von_neumann - cmp.ring_matched),
                                   std::string("ok")});
            table.row_failed.push_back(false);
        }
        catch (std::exception const& err)
        {
            bool const domain = dynamic_cast<DomainError const*>(&err) != nullptr;
            row.insert(row.end(), {std::int64_t{0}, 0.0, 0.0, 0.0, 0.0, 0.0,
                                   row_status(domain ? "domain_error" : "numerical_error",
                                              err.what())});
            table.row_failed.push_back(true);
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

Table postselect_table(RunConfig const& config)
{
    Table table;
    table.columns = {"theta_r", "n_cells", "spinless_bits", "parallel_modified_bits",
                     "antiparallel_modified_bits", "delta_bits", "parallel_zero_weight",
                     "status"};
    auto const ctx = make_context(config.energies_ev.front(), config.extension_nm,
                                  config.k_scale);
    auto const theta_r = config.theta_r.empty() ? default_theta_r(ctx) : config.theta_r;
    auto const rows = postselect_range_sweep(ctx, theta_r, config.threads);
    for (auto const& r : rows)
    {
        table.rows.push_back({r.theta_r, static_cast<std::int64_t>(r.n_cells), r.spinless,
                              r.parallel_modified, r.antiparallel_modified, r.delta,
                              static_cast<std::int64_t>(r.parallel_zero_weight),
                              row_status(r.status, r.message)});
        table.row_failed.push_back(r.status != "ok");
    }
    return table;
}

Table equator_table(RunConfig const& config)
{
    Table table;
    table.columns = {"delta_theta", "n_selected", "n_ring", "parallel_modified_bits",
                     "antiparallel_modified_bits", "status"};
    double delta = config.delta_theta_mrad * 1e-3;
    if (!(delta > 0))
    {
        delta = make_context(config.energies_ev.front(), config.extension_nm,
                             config.k_scale)
                    .delta_theta;
    }
    auto const n_ring = equator_grid(delta).n_cells;
    std::vector<std::size_t> selections;
    for (std::size_t n = 1; n < n_ring; n *= 2)
        selections.push_back(n);
    selections.push_back(n_ring);
    for (auto n : selections)
    {
        auto const eq = equator_entropies(delta, n);
        table.rows.push_back({delta, static_cast<std::int64_t>(eq.n_selected),
                              static_cast<std::int64_t>(eq.n_ring), eq.parallel_modified,
                              eq.antiparallel_modified, std::string("ok")});
        table.row_failed.push_back(false);
    }
    return table;
}

}  // namespace

Command parse_command(std::string_view name)
{
    if (name == "spinless-sweep") return Command::kSpinlessSweep;
    if (name == "sphere-sweep") return Command::kSphereSweep;
    if (name == "vn-compare") return Command::kVnCompare;
    if (name == "spin-sweep") return Command::kSpinSweep;
    if (name == "postselect-range") return Command::kPostselectRange;
    if (name == "equator") return Command::kEquator;
    throw ConfigError("unknown command '" + std::string(name) + "'");
}

std::string_view to_string(Command c)
{
    switch (c)
    {
        case Command::kSpinlessSweep: return "spinless-sweep";
        case Command::kSphereSweep: return "sphere-sweep";
        case Command::kVnCompare: return "vn-compare";
        case Command::kSpinSweep: return "spin-sweep";
        case Command::kPostselectRange: return "postselect-range";
        case Command::kEquator: return "equator";
    }
    return "unknown";
}

GridKind parse_geometry(std::string_view name)
{
    if (name == "rings") return GridKind::kRings;
    if (name == "sphere") return GridKind::kSpherePixels;
    if (name == "meridian") return GridKind::kMeridian;
    if (name == "equator") return GridKind::kEquatorRing;
    throw ConfigError("unknown geometry '" + std::string(name) + "'");
}

std::string_view to_string(GridKind g)
{
    switch (g)
    {
        case GridKind::kRings: return "rings";
        case GridKind::kSpherePixels: return "sphere";
        case GridKind::kMeridian: return "meridian";
        case GridKind::kEquatorRing: return "equator";
    }
    return "unknown";
}

std::vector<double> parse_real_list(std::string_view text)
{
    std::string const s = trim(text);
    std::vector<double> out;
    if (s.starts_with("log:"))
    {
        std::vector<std::string> parts;
        std::stringstream ss(s.substr(4));
        for (std::string item; std::getline(ss, item, ':');)
            parts.push_back(item);
        if (parts.size() != 3)
            throw ConfigError("log list must read log:first:last:count");
        double const first = parse_real(parts[0], "list");
        double const last = parse_real(parts[1], "list");
        std::size_t const count = parse_count(parts[2], "list");
        if (!(first > 0 && last > 0) || count < 1)
            throw ConfigError("log list needs positive bounds and count");
        for (std::size_t i = 0; i < count; ++i)
        {
            double const t = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
            out.push_back(std::exp(std::log(first) + t * (std::log(last) - std::log(first))));
        }
        return out;
    }
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');)
    {
        if (!trim(item).empty())
            out.push_back(parse_real(item, "list"));
    }
    return out;
}

std::map<std::string, std::string> read_config_file(std::filesystem::path const& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot read config file " + path.string());
    std::map<std::string, std::string> out;
    std::string line;
    for (int lineno = 1; std::getline(in, line); ++lineno)
    {
        if (auto const hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        if (trim(line).empty())
            continue;
        auto const eq = line.find('=');
        if (eq == std::string::npos)
        {
            throw ConfigError(path.string() + ":" + std::to_string(lineno)
                              + ": expected 'key = value'");
        }
        auto const key = trim(std::string_view(line).substr(0, eq));
        if (key.empty())
            throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": empty key");
        out[key] = trim(std::string_view(line).substr(eq + 1));
    }
    return out;
}

void apply_setting(RunConfig& config, std::string_view raw_key, std::string_view value)
{
    std::string const key = normalize_key(raw_key);
    try
    {
        if (key == "command")
            config.command = parse_command(trim(value));
        else if (key == "energy-ev")
            config.energies_ev = {parse_real(value, key)};
        else if (key == "energy-list")
            config.energies_ev = parse_real_list(value);
        else if (key == "packet-nm")
            config.extension_nm = parse_real(value, key);
        else if (key == "k-scale")
            config.k_scale = parse_real(value, key);
        else if (key == "grid-cap")
            config.grid_cap = parse_count(value, key);
        else if (key == "grid-points")
            config.grid_points = parse_count(value, key);
        else if (key == "channel")
            config.channel = parse_spin_channel(trim(value));
        else if (key == "geometry")
            config.geometry = parse_geometry(trim(value));
        else if (key == "theta-r")
            config.theta_r = parse_real_list(value);
        else if (key == "delta-theta-mrad")
            config.delta_theta_mrad = parse_real(value, key);
        else if (key == "out")
            config.output = trim(value);
        else if (key == "format")
        {
            auto const f = trim(value);
            if (f == "csv")
                config.format = OutputFormat::kCsv;
            else if (f == "json")
                config.format = OutputFormat::kJson;
            else
                throw ConfigError("format must be csv or json");
        }
        else if (key == "threads")
            config.threads = static_cast<unsigned>(parse_count(value, key));
        else if (key == "dump-density")
            config.density_dump = trim(value);
        else
            throw ConfigError("unknown setting");
    }
    catch (ConfigError const& e)
    {
        throw ConfigError("'" + key + "': " + e.what());
    }
    catch (DomainError const& e)
    {
        throw ConfigError("'" + key + "': " + e.what());
    }
}

void validate(RunConfig const& config)
{
    bool const explicit_equator
        = config.command == Command::kEquator && config.delta_theta_mrad > 0;
    if (config.energies_ev.empty() && !explicit_equator)
        throw ConfigError("'energy-ev'/'energy-list': at least one energy is required");
    for (double e : config.energies_ev)
    {
        if (!(e > 0) || !std::isfinite(e))
            throw ConfigError("'energy-list': energies must be positive");
    }
    if (!(config.extension_nm > 0) || !std::isfinite(config.extension_nm))
        throw ConfigError("'packet-nm': must be positive");
    if (!(config.k_scale > 0) || !std::isfinite(config.k_scale))
        throw ConfigError("'k-scale': must be positive");
    if (config.delta_theta_mrad < 0)
        throw ConfigError("'delta-theta-mrad': must be positive");
    if (config.command == Command::kVnCompare)
    {
        if (config.grid_points < 2)
            throw ConfigError("'grid-points': at least 2 are required");
        if (config.grid_points > config.grid_cap)
        {
            throw ConfigError("'grid-points': " + std::to_string(config.grid_points)
                              + " exceeds grid-cap " + std::to_string(config.grid_cap)
                              + "; subsample or raise the cap");
        }
    }
    if (config.command == Command::kPostselectRange)
    {
        if (config.energies_ev.size() != 1)
            throw ConfigError("'energy-ev': postselect-range takes exactly one energy");
        for (double t : config.theta_r)
        {
            if (!(t > 0))
                throw ConfigError("'theta-r': ranges must be positive");
        }
    }
}

std::string describe_columns()
{
    return R"(Output columns by command:
  spinless-sweep, sphere-sweep:
    energy_ev, channel, geometry, n_cells (rings, pixels or equator cells),
    entropy_bits (discrete), modified_bits (minus the Pauli bit),
    jaynes_bits (continuous limit), status
  spin-sweep:
    energy_ev, n_full, n_half, spinless_bits, parallel_bits,
    parallel_modified_bits, antiparallel_bits, antiparallel_modified_bits,
    parallel_minus_spinless (modified), antiparallel_minus_parallel, status
  vn-compare:
    energy_ev, n_grid, s_von_neumann, s_diagonal, s_ring_matched (same cells),
    s_ring_detector (width 2/(K L)), abs_diff = |s_von_neumann - s_ring_matched|,
    status
  postselect-range:
    theta_r, n_cells, spinless_bits, parallel_modified_bits,
    antiparallel_modified_bits, delta_bits (antiparallel - parallel),
    parallel_zero_weight, status
  equator:
    delta_theta, n_selected, n_ring, parallel_modified_bits,
    antiparallel_modified_bits, status)";
}

std::string config_hash(RunConfig const& config)
{
    std::ostringstream canon;
    canon << to_string(config.command) << '|';
    for (double e : config.energies_ev)
        canon << format_real(e) << ',';
    canon << '|' << format_real(config.extension_nm) << '|' << format_real(config.k_scale)
          << '|' << config.grid_points << '|' << config.grid_cap << '|'
          << to_string(config.channel) << '|' << to_string(config.geometry) << '|';
    for (double t : config.theta_r)
        canon << format_real(t) << ',';
    canon << '|' << format_real(config.delta_theta_mrad) << '|'
          << (config.format == OutputFormat::kCsv ? "csv" : "json");

    // FNV-1a, 64 bit
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : canon.str())
    {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Table compute_table(RunConfig const& config)
{
    switch (config.command)
    {
        case Command::kSpinlessSweep: return sweep_table(config, config.geometry);
        case Command::kSphereSweep: return sweep_table(config, GridKind::kSpherePixels);
        case Command::kVnCompare: return vn_table(config);
        case Command::kSpinSweep: return spin_table(config);
        case Command::kPostselectRange: return postselect_table(config);
        case Command::kEquator: return equator_table(config);
    }
    return {};
}

std::string render_csv(Table const& table, RunConfig const& config)
{
    std::ostringstream out;
    out << "# escatter-entropy v" << ESCATTER_VERSION
        << ", config-hash=" << config_hash(config) << '\n';
    for (std::size_t c = 0; c < table.columns.size(); ++c)
        out << (c ? "," : "") << table.columns[c];
    out << '\n';
    for (auto const& row : table.rows)
    {
        for (std::size_t c = 0; c < row.size(); ++c)
            out << (c ? "," : "") << csv_escape(format_cell(row[c]));
        out << '\n';
    }
    return out.str();
}

std::string render_json(Table const& table, RunConfig const& config)
{
    nlohmann::ordered_json doc;
    doc["version"] = ESCATTER_VERSION;
    doc["config_hash"] = config_hash(config);
    doc["command"] = std::string(to_string(config.command));
    doc["rows"] = nlohmann::ordered_json::array();
    for (auto const& row : table.rows)
    {
        nlohmann::ordered_json obj;
        for (std::size_t c = 0; c < row.size(); ++c)
        {
            std::visit([&](auto const& v) { obj[table.columns[c]] = v; }, row[c]);
        }
        doc["rows"].push_back(std::move(obj));
    }
    return doc.dump(2) + "\n";
}

void write_atomic(std::filesystem::path const& path, std::string const& content)
{
    auto tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw ConfigError("cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out)
        {
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw ConfigError("failed writing " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

int run(RunConfig const& config, std::ostream& out, std::ostream& err)
{
    try
    {
        validate(config);
    }
    catch (ConfigError const& e)
    {
        err << "escatter: invalid configuration: " << e.what() << '\n';
        return kExitConfig;
    }

    Table table;
    try
    {
        table = compute_table(config);
    }
    catch (ConfigError const& e)
    {
        err << "escatter: invalid configuration: " << e.what() << '\n';
        return kExitConfig;
    }
    catch (std::exception const& e)
    {
        err << "escatter: numerical failure: " << e.what() << '\n';
        return kExitNumeric;
    }

    std::string const content = config.format == OutputFormat::kCsv
                                    ? render_csv(table, config)
                                    : render_json(table, config);
    if (config.output.empty())
    {
        out << content;
    }
    else
    {
        try
        {
            write_atomic(config.output, content);
        }
        catch (std::exception const& e)
        {
            err << "escatter: " << e.what() << '\n';
            return kExitConfig;
        }
        for (std::size_t r = 0; r < table.rows.size(); ++r)
        {
            out << to_string(config.command) << " row " << r;
            for (std::size_t c = 0; c < table.columns.size(); ++c)
                out << ' ' << table.columns[c] << '=' << format_cell(table.rows[r][c]);
            out << '\n';
        }
    }

    int code = kExitOk;
    for (std::size_t r = 0; r < table.rows.size(); ++r)
    {
        if (table.row_failed[r])
        {
            err << "escatter: row " << r << " failed: "
                << format_cell(table.rows[r].back()) << '\n';
            code = kExitNumeric;
        }
    }
    return code;
}

}  // namespace escatter
