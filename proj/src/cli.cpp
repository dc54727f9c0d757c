#include "ged/cli.hpp"

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <algorithm>
#include <array>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <json.hpp>

#include "ged/errors.hpp"
#include "ged/event_log_io.hpp"
#include "ged/grouping.hpp"
#include "ged/lineage.hpp"

namespace ged::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr int kManifestVersion = 1;

std::string read_text(const std::string& path, const char* what) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(std::string("cannot open ") + what + ": " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << content) || !out.flush()) throw IoError("cannot write " + path);
}

EdgeFormat edge_format(const RunConfig& cfg) { return cfg.edge_format == "csv" ? EdgeFormat::Csv : EdgeFormat::Tsv; }

json config_to_json(const RunConfig& c) {
    const auto& th = c.track.thresholds;
    return {
        {"command", c.command},
        {"edges", c.edges_path},
        {"edge_format", c.edge_format},
        {"groups", c.groups_path},
        {"detect", c.detect},
        {"seed", c.seed},
        {"window_length", c.window.window_length},
        {"overlap", c.window.overlap_fraction},
        {"origin", c.window.origin ? json(*c.window.origin) : json(nullptr)},
        {"alpha", th.alpha},
        {"beta", th.beta},
        {"dissolve_floor", th.dissolve_floor},
        {"match_floor", th.match_floor},
        {"balance_ratio", c.track.balance_ratio},
        {"threads", c.track.threads},
        {"importance", c.importance},
        {"sp_epsilon", c.sp.epsilon},
        {"sp_tolerance", c.sp.tolerance},
        {"sp_max_iter", c.sp.max_iterations},
        {"min_group_size", c.min_group_size},
        {"log", c.log_path},
        {"dump_dir", c.dump_dir},
        {"out", c.out_path},
        {"formats", c.formats},
    };
}

RunConfig config_from_json(const json& j) {
    RunConfig c;
    c.command = j.at("command").get<std::string>();
    c.edges_path = j.at("edges").get<std::string>();
    c.edge_format = j.at("edge_format").get<std::string>();
    c.groups_path = j.at("groups").get<std::string>();
    c.detect = j.at("detect").get<std::string>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.window.window_length = j.at("window_length").get<Timestamp>();
    c.window.overlap_fraction = j.at("overlap").get<double>();
    if (!j.at("origin").is_null()) c.window.origin = j.at("origin").get<Timestamp>();
    c.track.thresholds.alpha = j.at("alpha").get<double>();
    c.track.thresholds.beta = j.at("beta").get<double>();
    c.track.thresholds.dissolve_floor = j.at("dissolve_floor").get<double>();
    c.track.thresholds.match_floor = j.at("match_floor").get<double>();
    c.track.balance_ratio = j.at("balance_ratio").get<double>();
    c.track.threads = j.at("threads").get<unsigned>();
    c.importance = j.at("importance").get<std::string>();
    c.sp.epsilon = j.at("sp_epsilon").get<double>();
    c.sp.tolerance = j.at("sp_tolerance").get<double>();
    c.sp.max_iterations = j.at("sp_max_iter").get<int>();
    c.min_group_size = j.at("min_group_size").get<std::size_t>();
    c.log_path = j.at("log").get<std::string>();
    c.dump_dir = j.at("dump_dir").get<std::string>();
    c.out_path = j.at("out").get<std::string>();
    c.formats = j.at("formats").get<std::vector<std::string>>();
    return c;
}

std::vector<std::pair<std::string, std::string>> input_files(const RunConfig& c) {
    std::vector<std::pair<std::string, std::string>> files;
    if (!c.edges_path.empty()) files.emplace_back("edges", c.edges_path);
    if (!c.groups_path.empty()) files.emplace_back("groups", c.groups_path);
    if (!c.log_path.empty()) files.emplace_back("log", c.log_path);
    return files;
}

std::string manifest_target(const RunConfig& c) {
    if (!c.manifest_path.empty()) return c.manifest_path;
    if (!c.out_path.empty()) return c.out_path + ".manifest.json";
    return {};
}

void write_manifest(const RunConfig& c, const std::vector<std::string>& outputs) {
    const auto path = manifest_target(c);
    if (path.empty()) return;
    json inputs = json::object();
    for (const auto& [role, file] : input_files(c)) inputs[role] = {{"path", file}, {"sha256", sha256_file(file)}};
    json outs = json::array();
    for (const auto& file : outputs) outs.push_back({{"path", file}, {"sha256", sha256_file(file)}});
    const json manifest = {{"manifest_version", kManifestVersion},
                           {"tool", "ged"},
                           {"config", config_to_json(c)},
                           {"inputs", inputs},
                           {"outputs", outs}};
    write_text(path, manifest.dump(2) + "\n");
}

// Writes one payload per requested format. With several formats the output
// path's extension is replaced by the format name.
std::vector<std::string> emit(const RunConfig& c, const std::vector<std::pair<std::string, std::string>>& payloads,
                              std::ostream& out) {
    std::vector<std::string> written;
    for (const auto& [format, text] : payloads) {
        if (c.out_path.empty()) {
            out << text;
            continue;
        }
        auto path = payloads.size() == 1 ? fs::path(c.out_path) : fs::path(c.out_path).replace_extension(format);
        write_text(path.string(), text);
        written.push_back(path.string());
    }
    return written;
}

std::string render(const std::string& format, const EventLog& log) {
    if (format == "json") return events_to_json(log.events);
    if (format == "csv") return events_to_csv(log.events);
    return to_dot(build_lineage(log));
}

ParsedEdges load_edges(const RunConfig& c, std::ostream& err) {
    auto parsed = parse_edge_file(c.edges_path, edge_format(c));
    const auto& r = parsed.report;
    if (r.total_dropped() > 0)
        err << "warning: dropped " << r.self_loops_dropped << " self-loop(s), " << r.malformed << " malformed line(s), "
            << r.non_positive_weight << " non-positive weight(s)\n";
    return parsed;
}

int cmd_slice(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const auto tsn = slice_timeframes(load_edges(c, err).edges, c.window);
    std::ostringstream summary;
    summary << "timeframe\tstart\tend\tnodes\tedges\n";
    for (const auto& s : tsn.timeframes)
        summary << s.index << '\t' << s.start << '\t' << s.end << '\t' << s.nodes.size() << '\t' << s.edges.size() << '\n';
    auto outputs = emit(c, {{"tsv", summary.str()}}, out);

    if (!c.dump_dir.empty()) {
        std::error_code ec;
        fs::create_directories(c.dump_dir, ec);
        if (ec) throw IoError("cannot create " + c.dump_dir + ": " + ec.message());
        for (const auto& s : tsn.timeframes) {
            std::ostringstream dump;
            dump << std::setprecision(17);
            for (const auto& [key, w] : s.edges) dump << key.first << '\t' << key.second << '\t' << w << '\n';
            const auto path = (fs::path(c.dump_dir) / ("frame_" + std::to_string(s.index) + ".tsv")).string();
            write_text(path, dump.str());
            outputs.push_back(path);
        }
    }
    write_manifest(c, outputs);
    return kOk;
}

int cmd_track(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const auto tsn = slice_timeframes(load_edges(c, err).edges, c.window);

    std::vector<GroupingSnapshot> groupings;
    if (!c.groups_path.empty()) {
        groupings = load_groupings_file(c.groups_path);
    } else {
        for (const auto& s : tsn.timeframes)
            if (!s.nodes.empty()) groupings.push_back(label_propagation(s, c.seed));
    }
    if (c.min_group_size > 0) groupings = filter_min_size(std::move(groupings), c.min_group_size);

    const auto report = validate_groupings(tsn, groupings);
    if (!report.unknown_members.empty())
        err << "warning: " << report.unknown_members.size() << " group member(s) absent from their timeframe\n";
    if (c.verbosity > 0 && !report.ungrouped_snapshots.empty())
        err << "note: " << report.ungrouped_snapshots.size() << " timeframe(s) have no groups\n";

    const auto provider = c.importance == "degree" ? degree_provider() : social_position_provider(c.sp);
    const auto log = track_evolution(tsn, groupings, provider, c.track);

    std::vector<std::pair<std::string, std::string>> payloads;
    for (const auto& f : c.formats) payloads.emplace_back(f, render(f, log));
    write_manifest(c, emit(c, payloads, out));
    return kOk;
}

int cmd_export(const RunConfig& c, std::ostream& out, std::ostream&) {
    const auto log = log_from_events(events_from_json(read_text(c.log_path, "event log")));
    std::vector<std::pair<std::string, std::string>> payloads;
    for (const auto& f : c.formats) payloads.emplace_back(f, render(f, log));
    write_manifest(c, emit(c, payloads, out));
    return kOk;
}

int dispatch(const RunConfig& c, std::ostream& out, std::ostream& err) {
    for (const auto& w : c.validate()) err << "warning: " << w << '\n';
    if (c.command == "slice") return cmd_slice(c, out, err);
    if (c.command == "track") return cmd_track(c, out, err);
    if (c.command == "export") return cmd_export(c, out, err);
    throw ConfigError("unknown command '" + c.command + "'");
}

RunConfig config_from_manifest(const std::string& path, const std::string& out_override,
                               const std::string& manifest_override) {
    json manifest;
    try {
        manifest = json::parse(read_text(path, "manifest"));
        if (manifest.at("manifest_version").get<int>() != kManifestVersion) throw ConfigError("unsupported manifest version");
        auto c = config_from_json(manifest.at("config"));
        for (const auto& [role, file] : input_files(c)) {
            const auto& recorded = manifest.at("inputs").at(role).at("sha256").get_ref<const std::string&>();
            if (sha256_file(file) != recorded) throw ConfigError("input '" + file + "' changed since the manifest was written");
        }
        if (!out_override.empty()) c.out_path = out_override;
        c.manifest_path = manifest_override;
        return c;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed manifest: ") + e.what(), 0);
    }
}

}  // namespace

std::vector<std::string> RunConfig::validate() const {
    std::vector<std::string> warnings;
    auto check_formats = [this](std::initializer_list<const char*> allowed) {
        if (formats.empty()) throw ConfigError("at least one output format is required");
        for (const auto& f : formats)
            if (std::none_of(allowed.begin(), allowed.end(), [&f](const char* a) { return f == a; }))
                throw ConfigError("format '" + f + "' is not available for " + command);
        if (formats.size() > 1 && out_path.empty()) throw ConfigError("several formats need --out");
    };
    if (command == "slice" || command == "track") {
        if (edge_format != "tsv" && edge_format != "csv") throw ConfigError("edge format must be tsv or csv");
        window.validate();
    }
    if (command == "track") {
        warnings = track.validate();
        sp.validate();
        if (importance != "sp" && importance != "degree") throw ConfigError("importance must be sp or degree");
        if (groups_path.empty() == detect.empty()) throw ConfigError("give exactly one of --groups or --detect builtin");
        if (!detect.empty() && detect != "builtin") throw ConfigError("only --detect builtin is available");
        check_formats({"json", "csv", "dot"});
    }
    if (command == "export") {
        if (log_path.empty()) throw ConfigError("--log is required");
        check_formats({"dot", "csv", "json"});
    }
    return warnings;
}

std::string sha256_file(const std::string& path) {
    const auto content = read_text(path, "file");
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int length = 0;
    if (EVP_Digest(content.data(), content.size(), digest.data(), &length, EVP_sha256(), nullptr) != 1)
        throw IoError("sha256 failed for " + path);
    std::ostringstream hex;
    for (unsigned int i = 0; i < length; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
    return hex.str();
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Group evolution discovery over temporal social networks", "ged"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::optional<Timestamp> origin;
    std::string replay_manifest;
    std::string format_list;

    // Every option can also come from GED_<NAME>; flags win.
    auto env = [](std::string flag) {
        std::string name = "GED_";
        for (const char ch : flag.substr(2)) name += ch == '-' ? '_' : static_cast<char>(std::toupper(ch));
        return name;
    };
    auto add = [&env](CLI::App* sub, const std::string& flag, auto& target, const std::string& help) {
        return sub->add_option(flag, target, help)->envname(env(flag));
    };

    auto* slice = app.add_subcommand("slice", "Cut an edge stream into timeframes and summarize them");
    auto* track = app.add_subcommand("track", "Track group evolution across consecutive timeframes");
    auto* exporter = app.add_subcommand("export", "Convert a stored JSON event log to DOT or CSV");
    auto* replay = app.add_subcommand("replay", "Re-run a previous invocation from its manifest");

    for (auto* sub : {slice, track}) {
        add(sub, "--edges", cfg.edges_path, "Edge list: source, target, timestamp[, weight]")->required();
        add(sub, "--edge-format", cfg.edge_format, "tsv or csv")->check(CLI::IsMember({"tsv", "csv"}));
        add(sub, "--window-length", cfg.window.window_length, "Timeframe length in timestamp units")->required();
        add(sub, "--overlap", cfg.window.overlap_fraction, "Fractional overlap of consecutive windows, in [0, 1)");
        add(sub, "--origin", origin, "Start of the first window (default: earliest timestamp)");
    }
    add(slice, "--dump-dir", cfg.dump_dir, "Write each timeframe's aggregated edges here");

    add(track, "--groups", cfg.groups_path, "Grouping file: timeframe, group id, node id");
    add(track, "--detect", cfg.detect, "Detect groups with the built-in label propagation")->check(CLI::IsMember({"builtin"}));
    add(track, "--seed", cfg.seed, "Seed for the built-in detector");
    add(track, "--alpha", cfg.track.thresholds.alpha, "Threshold on I(G1, G2)");
    add(track, "--beta", cfg.track.thresholds.beta, "Threshold on I(G2, G1)");
    add(track, "--match-floor", cfg.track.thresholds.match_floor, "Inclusion needed for a pair to count as a match");
    add(track, "--balance-ratio", cfg.track.balance_ratio, "Max/min contribution ratio still called Equal");
    add(track, "--importance", cfg.importance, "Member importance: sp or degree")->check(CLI::IsMember({"sp", "degree"}));
    add(track, "--sp-epsilon", cfg.sp.epsilon, "Social position damping, in [0, 1)");
    add(track, "--sp-tolerance", cfg.sp.tolerance, "Social position convergence tolerance");
    add(track, "--sp-max-iter", cfg.sp.max_iterations, "Social position iteration cap");
    add(track, "--min-group-size", cfg.min_group_size, "Ignore groups smaller than this (0 = keep all)");
    add(track, "--threads", cfg.track.threads, "Worker threads; output does not depend on it");

    add(exporter, "--log", cfg.log_path, "JSON event log produced by track")->required();

    for (auto* sub : {slice, track, exporter}) {
        add(sub, "--out", cfg.out_path, "Output path (default: standard output)");
        add(sub, "--manifest", cfg.manifest_path, "Manifest path (default: <out>.manifest.json)");
        sub->add_flag("-v,--verbose", cfg.verbosity, "More diagnostics");
    }
    add(track, "--format", format_list, "Comma-separated: json, csv, dot");
    add(exporter, "--format", format_list, "Comma-separated: dot, csv, json");

    std::string replay_out;
    replay->add_option("manifest_file", replay_manifest, "Manifest written by an earlier run")->required();
    replay->add_option("--out", replay_out, "Write outputs here instead of the recorded path");
    replay->add_option("--manifest", cfg.manifest_path, "Manifest path for the replayed run");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kValidationError;
    }

    try {
        if (replay->parsed()) return dispatch(config_from_manifest(replay_manifest, replay_out, cfg.manifest_path), out, err);

        cfg.window.origin = origin;
        if (slice->parsed()) cfg.command = "slice";
        if (track->parsed()) cfg.command = "track";
        if (exporter->parsed()) cfg.command = "export";
        if (format_list.empty()) format_list = cfg.command == "export" ? "dot" : "json";
        std::stringstream fl(format_list);
        for (std::string f; std::getline(fl, f, ',');)
            if (!f.empty()) cfg.formats.push_back(f);
        return dispatch(cfg, out, err);
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    } catch (const ConvergenceError& e) {
        err << "error: " << e.what() << '\n';
        return kConvergenceError;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kValidationError;
    }
}

}  // namespace ged::cli
