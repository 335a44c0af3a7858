#include "roadrough/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "roadrough/config.hpp"
#include "roadrough/correlation.hpp"
#include "roadrough/csv.hpp"
#include "roadrough/distress.hpp"
#include "roadrough/ingest.hpp"
#include "roadrough/panel_qa.hpp"
#include "roadrough/report.hpp"
#include "roadrough/roughness.hpp"
#include "roadrough/segmentation.hpp"
#include "roadrough/svg.hpp"
#include "roadrough/synth.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace roadrough {

namespace {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("file not found: " + path);
    }
    return in;
}

/// Wraps parse errors with the file they came from.
template <typename Fn>
auto parse_file(const std::string& path, Fn&& fn) {
    auto in = open_input(path);
    try {
        return fn(in);
    } catch (const ParseError& e) {
        throw ParseError(e.row(), path + ": " + e.detail());
    }
}

void write_file(const fs::path& dir, const std::string& name, const std::string& content) {
    std::error_code ec;
    const fs::path target = dir / name;
    fs::create_directories(target.parent_path(), ec);
    std::ofstream out(target, std::ios::binary | std::ios::trunc);
    if (!out || !(out << content)) {
        throw IoError("cannot write " + target.string());
    }
}

template <typename WriteFn>
std::string render(WriteFn&& fn) {
    std::ostringstream s;
    fn(s);
    return s.str();
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

struct Options {
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 42;
    bool per_run_fit = false;
    bool mean_subtraction = false;
    bool synthetic = false;
    std::vector<std::string> traces;
    std::string sections, route, ratings, distress, iri, rms;
};

Config load_config_opt(const Options& o) { return o.config_path.empty() ? Config{} : [&] {
    open_input(o.config_path);
    return parse_file(o.config_path, [](std::istream& in) { return parse_config(in); });
}(); }

std::string run_id_for(const std::string& path) { return fs::path(path).stem().string(); }

/// Parses trace files concurrently; results keep the argument order.
std::vector<Trace> load_traces(const std::vector<std::string>& paths, double gravity) {
    for (const auto& p : paths) {
        if (!fs::exists(p)) throw IoError("file not found: " + p);
    }
    std::vector<std::future<Trace>> jobs;
    for (const auto& p : paths) {
        jobs.push_back(std::async(std::launch::async, [p, gravity] {
            return parse_file(p, [&](std::istream& in) { return parse_trace(in, run_id_for(p), gravity); });
        }));
    }
    std::vector<Trace> traces;
    std::set<std::string> ids;
    for (auto& j : jobs) {
        traces.push_back(j.get());
        if (!ids.insert(traces.back().run_id()).second) {
            throw InvalidInput("duplicate run id " + traces.back().run_id());
        }
    }
    return traces;
}

std::vector<SectionDefinition> load_sections(const Options& o) {
    if (o.sections.empty() || o.route.empty()) {
        throw IoError("--sections and --route are required");
    }
    auto route = std::make_shared<const Route>(parse_file(o.route, [](std::istream& in) { return parse_route_csv(in); }));
    return parse_file(o.sections, [&](std::istream& in) { return parse_sections_csv(in, route); });
}

struct RmsRun {
    std::vector<SectionRun> runs;
    RmsTable table;
    std::vector<std::string> section_order;
};

RmsRun segment_and_measure(const std::vector<Trace>& traces, const std::vector<SectionDefinition>& sections,
                           const Config& config, bool mean_subtraction, std::ostream& err) {
    RmsRun result;
    for (const auto& s : sections) result.section_order.push_back(s.section_id());
    std::map<std::string, double> reference;
    for (const auto& trace : traces) {
        auto seg = assign_sections(trace, sections, config.segmentation);
        for (const auto& w : seg.warnings) err << "warning: " << w << '\n';
        if (seg.dropped > 0) {
            err << "info: run " << trace.run_id() << ": " << seg.dropped << " sample(s) outside all sections ("
                << seg.unlocated << " outside the GPS span)\n";
        }
        for (const auto& run : seg.runs) {
            if (!run.samples().empty() && !run.speed_gate_pass()) {
                err << "warning: section " << run.section_id() << " run " << run.run_id() << ": mean speed "
                    << csv::format_fixed(*run.mean_speed_kph(), 1) << " kph outside the speed gate\n";
            }
        }
        reference[trace.run_id()] = mean_subtraction ? mean_vertical(trace.accel()) : trace.gravity_mps2();
        std::move(seg.runs.begin(), seg.runs.end(), std::back_inserter(result.runs));
    }
    result.table = section_rms_table(result.runs, reference);
    for (const auto& s : result.table.skipped) {
        err << "skip: section " << s.section_id << " run " << s.run_id << " (no samples)\n";
    }
    return result;
}

std::string segments_csv(const std::vector<SectionRun>& runs) {
    std::ostringstream s;
    s << "section_id,run_id,n_samples,mean_speed_kph,speed_gate_pass\n";
    for (const auto& r : runs) {
        s << csv::escape(r.section_id()) << ',' << csv::escape(r.run_id()) << ',' << r.samples().size() << ','
          << (r.mean_speed_kph() ? csv::format_double(*r.mean_speed_kph()) : "") << ','
          << (r.speed_gate_pass() ? "true" : "false") << '\n';
    }
    return s.str();
}

std::string fig5_svg(const RmsTable& table, const std::vector<std::string>& section_order) {
    std::set<std::string> run_ids;
    for (const auto& r : table.rows) run_ids.insert(r.run_id);
    std::vector<svg::Series> series;
    for (const auto& run : run_ids) {
        svg::Series s{run, {}};
        for (const auto& section : section_order) {
            auto it = std::find_if(table.rows.begin(), table.rows.end(),
                                   [&](const RmsRow& r) { return r.run_id == run && r.section_id == section; });
            s.values.push_back(it == table.rows.end() ? std::nullopt : std::optional<double>(it->rms_mps2));
        }
        series.push_back(std::move(s));
    }
    return svg::category_line_chart("RMS per section and run", "Section", "RMS (m/s^2)", section_order, series);
}

std::string fit_svg(const Pairing& p, const std::string& title, const std::string& y_short) {
    svg::ScatterChart chart;
    chart.title = title;
    chart.x_label = p.x_label;
    chart.y_label = p.y_label;
    for (const auto& pt : p.points) chart.points.push_back({pt.x, pt.y});
    chart.line = std::make_pair(p.fit.slope(), p.fit.intercept());
    chart.annotations.push_back(report::equation_label(y_short, "RMS", p.fit.slope(), p.fit.intercept()));
    chart.annotations.push_back(p.fit.r2() ? "R² = " + csv::format_fixed(*p.fit.r2(), 3) : "R² undefined");
    if (p.fit.pearson_r()) chart.annotations.push_back("r = " + csv::format_fixed(*p.fit.pearson_r(), 3));
    chart.annotations.push_back("n = " + std::to_string(p.fit.n()));
    return svg::scatter_chart(chart);
}

std::vector<std::string> read_section_ids(const std::string& path) {
    return parse_file(path, [](std::istream& in) {
        csv::LineReader reader(in);
        csv::require_header(reader, "section_id,start_chainage_m,end_chainage_m");
        std::vector<std::string> ids;
        std::string line;
        while (reader.next(line)) ids.push_back(csv::split(line).front());
        return ids;
    });
}

fs::path require_out_dir(const Options& o) {
    if (o.out_dir.empty()) throw IoError("--out-dir is required");
    return fs::path(o.out_dir);
}

// ---------------------------------------------------------------------------
// Subcommands

int cmd_validate(const Options& o, std::ostream& out, std::ostream& err) {
    const Config config = load_config_opt(o);
    ordered_json reports = ordered_json::array();
    int code = kExitOk;
    for (const auto& path : o.traces) {
        if (!fs::exists(path)) {
            err << "error: file not found: " << path << '\n';
            reports.push_back({{"file", path}, {"error", "file not found"}});
            code = kExitIoError;
            continue;
        }
        try {
            auto trace = parse_file(path, [&](std::istream& in) {
                return parse_trace(in, run_id_for(path), config.gravity_mps2);
            });
            const auto v = validate_trace(trace, config.expected_cadence_ms);
            reports.push_back(report::validation_json(path, trace, v, config.expected_cadence_ms));
            if (!v.completeness_ok && code == kExitOk) code = kExitDataError;
        } catch (const ParseError& e) {
            reports.push_back({{"file", path}, {"parse_error", {{"row", e.row()}, {"message", e.detail()}}}});
            err << "error: " << e.what() << '\n';
            if (code == kExitOk) code = kExitDataError;
        }
    }
    out << dump(reports);
    if (!o.out_dir.empty()) write_file(o.out_dir, "validation.json", dump(reports));
    return code;
}

int cmd_segment(const Options& o, std::ostream&, std::ostream& err) {
    const auto dir = require_out_dir(o);
    const Config config = load_config_opt(o);
    const auto sections = load_sections(o);
    const auto traces = load_traces(o.traces, config.gravity_mps2);
    const auto result = segment_and_measure(traces, sections, config, o.mean_subtraction, err);
    write_file(dir, "segments.csv", segments_csv(result.runs));
    return kExitOk;
}

int cmd_rms(const Options& o, std::ostream&, std::ostream& err) {
    const auto dir = require_out_dir(o);
    const Config config = load_config_opt(o);
    const auto sections = load_sections(o);
    const auto traces = load_traces(o.traces, config.gravity_mps2);
    const auto result = segment_and_measure(traces, sections, config, o.mean_subtraction, err);
    write_file(dir, "segments.csv", segments_csv(result.runs));
    write_file(dir, "rms.csv", render([&](std::ostream& s) { write_rms_csv(s, result.table, config.iri_model); }));
    write_file(dir, "fig5_rms.svg", fig5_svg(result.table, result.section_order));
    return kExitOk;
}

int cmd_pdi(const Options& o, std::ostream&, std::ostream&) {
    const auto dir = require_out_dir(o);
    const Config config = load_config_opt(o);
    const auto records = parse_file(o.distress, [](std::istream& in) { return parse_distress_csv(in); });
    std::vector<std::string> ids;
    if (!o.sections.empty()) ids = read_section_ids(o.sections);
    const auto pdi = compute_pdi(records, config.weights, ids);
    write_file(dir, "pdi.csv", render([&](std::ostream& s) { write_pdi_csv(s, pdi); }));
    return kExitOk;
}

int cmd_qa(const Options& o, std::ostream&, std::ostream&) {
    const auto dir = require_out_dir(o);
    const Config config = load_config_opt(o);
    const auto ratings = parse_file(o.ratings, [](std::istream& in) { return parse_rating_csv(in); });
    std::optional<std::vector<RmsCsvRow>> rms;
    if (!o.rms.empty()) rms = parse_file(o.rms, [](std::istream& in) { return parse_rms_csv(in); });
    write_file(dir, "qa.json", dump(report::qa_report(ratings, rms ? &*rms : nullptr, config)));
    return kExitOk;
}

ordered_json run_fit(const CorrelationInputs& inputs, const fs::path& dir) {
    const auto report = correlate_indices(inputs);
    auto j = report::fit_report(report, inputs.per_run);
    if (report.rms_iri) {
        write_file(dir, "fig7a_rms_iri.svg", fit_svg(*report.rms_iri, "IRI vs RMS", "IRI"));
        std::vector<std::pair<double, double>> pairs;
        for (const auto& p : report.rms_iri->points) pairs.emplace_back(p.x, p.y);
        try {
            const auto model = fit_iri_model(pairs);
            j["iri_model_refit"] = {{"slope", model.slope()}, {"intercept", model.intercept()}};
        } catch (const InvalidInput& e) {
            j["iri_model_refit"] = {{"error", e.what()}};
        }
    }
    if (report.rms_pdi) write_file(dir, "fig8a_rms_pdi.svg", fit_svg(*report.rms_pdi, "PDI vs RMS", "PDI"));
    if (report.rms_rqi) write_file(dir, "fig8b_rms_rqi.svg", fit_svg(*report.rms_rqi, "RQI vs RMS", "RQI"));
    write_file(dir, "fit.json", dump(j));
    return j;
}

int cmd_fit(const Options& o, std::ostream&, std::ostream&) {
    const auto dir = require_out_dir(o);
    if (o.rms.empty()) throw IoError("--rms is required");
    CorrelationInputs inputs;
    inputs.per_run = o.per_run_fit;
    inputs.rms = parse_file(o.rms, [](std::istream& in) { return parse_rms_csv(in); });
    if (!o.iri.empty()) inputs.iri = parse_file(o.iri, [](std::istream& in) { return parse_iri_csv(in); });
    if (!o.ratings.empty()) inputs.ratings = parse_file(o.ratings, [](std::istream& in) { return parse_rating_csv(in); });
    if (!o.distress.empty()) {
        // --pdi takes a computed pdi.csv; stored in `distress` for this subcommand.
        inputs.pdi = parse_file(o.distress, [](std::istream& in) { return parse_pdi_csv(in); });
    }
    if (!inputs.iri && !inputs.ratings && !inputs.pdi) {
        throw IoError("fit needs at least one of --iri, --ratings, --pdi");
    }
    run_fit(inputs, dir);
    return kExitOk;
}

struct SyntheticInputs {
    std::vector<std::string> traces;
    std::string sections, route, ratings, distress, iri, config;
};

/// Writes a complete synthetic campaign (5 sections x 5 runs, 11 raters) under `dir`.
SyntheticInputs write_synthetic(const fs::path& dir, std::uint64_t seed) {
    synth::CampaignSpec spec;
    spec.seed = seed;
    const auto campaign = synth::gen_campaign(spec);

    SyntheticInputs paths;
    auto put = [&](const std::string& name, const std::string& content) {
        write_file(dir, name, content);
        return (dir / name).string();
    };
    paths.route = put("route.csv", render([&](std::ostream& s) { write_route_csv(s, *campaign.route); }));
    paths.sections = put("sections.csv", render([&](std::ostream& s) { write_sections_csv(s, campaign.sections); }));
    for (const auto& t : campaign.traces) {
        paths.traces.push_back(
            put("traces/" + t.run_id() + ".csv", render([&](std::ostream& s) { write_trace_csv(s, t); })));
    }

    std::vector<std::string> section_ids, run_ids;
    for (const auto& s : campaign.sections) section_ids.push_back(s.section_id());
    for (const auto& t : campaign.traces) run_ids.push_back(t.run_id());

    // Ride quality falls linearly with roughness.
    synth::PanelSpec panel;
    for (double rms : spec.section_rms) panel.true_rqi.push_back(std::clamp(4.5 - 2.2 * rms, 0.5, 4.5));
    panel.raters = 11;
    panel.noise_sd = 0.25;
    panel.seed = seed + 1;
    panel.runs = spec.runs;
    panel.section_ids = section_ids;
    panel.run_ids = run_ids;
    paths.ratings = put("ratings.csv", render([&](std::ostream& s) { write_rating_csv(s, synth::gen_panel(panel)); }));

    paths.distress = put("distress.csv", render([&](std::ostream& s) {
                             write_distress_csv(s, synth::gen_distress(section_ids, seed + 2));
                         }));

    // Profiler-style reference IRI from the linear model plus measurement noise.
    std::mt19937_64 rng(seed + 3);
    std::normal_distribution<double> noise(0.0, 0.15);
    std::map<std::string, double> iri;
    const IriModel model;
    for (std::size_t i = 0; i < section_ids.size(); ++i) {
        iri[section_ids[i]] = std::max(0.0, estimate_iri(spec.section_rms[i], model) + noise(rng));
    }
    paths.iri = put("iri.csv", render([&](std::ostream& s) { write_iri_csv(s, iri); }));

    synth::TwoZoneSpec zones;
    zones.seed = seed + 4;
    const auto two_zone = synth::gen_two_zone_route(zones);
    put("two_zone.csv", render([&](std::ostream& s) { write_trace_csv(s, two_zone); }));
    svg::ScatterChart chart;
    chart.title = "Windowed RMS, smooth then rough pavement";
    chart.x_label = "Time (s)";
    chart.y_label = "RMS (m/s^2)";
    chart.connect = true;
    for (const auto& w : windowed_rms(two_zone, 10.0, two_zone.gravity_mps2())) {
        chart.points.push_back({w.start_s, w.rms_mps2});
        chart.points.push_back({w.end_s, w.rms_mps2});
    }
    put("fig6_windowed_rms.svg", svg::scatter_chart(chart));

    paths.config = put("config.toml", render([](std::ostream& s) { write_config(s, Config{}); }));
    return paths;
}

int cmd_synth(const Options& o, std::ostream& out, std::ostream&) {
    const auto dir = require_out_dir(o);
    const auto paths = write_synthetic(dir, o.seed);
    out << "synthetic campaign written to " << dir.string() << " (" << paths.traces.size() << " runs)\n";
    return kExitOk;
}

int cmd_report(Options o, std::ostream& out, std::ostream& err) {
    const auto dir = require_out_dir(o);
    if (o.synthetic) {
        const auto paths = write_synthetic(dir / "inputs", o.seed);
        o.traces = paths.traces;
        o.sections = paths.sections;
        o.route = paths.route;
        o.ratings = paths.ratings;
        o.distress = paths.distress;
        o.iri = paths.iri;
    }
    if (o.traces.empty()) throw IoError("report needs --trace files or --synthetic");
    const Config config = load_config_opt(o);
    ordered_json summary;
    std::vector<std::string> files;

    const auto traces = load_traces(o.traces, config.gravity_mps2);
    ordered_json validation = ordered_json::array();
    bool validation_ok = true;
    for (std::size_t i = 0; i < traces.size(); ++i) {
        const auto v = validate_trace(traces[i], config.expected_cadence_ms);
        validation_ok = validation_ok && v.completeness_ok;
        validation.push_back(report::validation_json(o.traces[i], traces[i], v, config.expected_cadence_ms));
    }
    write_file(dir, "validation.json", dump(validation));
    files.push_back("validation.json");

    const auto sections = load_sections(o);
    const auto measured = segment_and_measure(traces, sections, config, o.mean_subtraction, err);
    write_file(dir, "segments.csv", segments_csv(measured.runs));
    const std::string rms_csv = render([&](std::ostream& s) { write_rms_csv(s, measured.table, config.iri_model); });
    write_file(dir, "rms.csv", rms_csv);
    write_file(dir, "fig5_rms.svg", fig5_svg(measured.table, measured.section_order));
    files.insert(files.end(), {"segments.csv", "rms.csv", "fig5_rms.svg"});

    std::istringstream rms_in(rms_csv);
    const auto rms_rows = parse_rms_csv(rms_in);

    CorrelationInputs inputs;
    inputs.per_run = o.per_run_fit;
    inputs.rms = rms_rows;

    if (!o.distress.empty()) {
        const auto records = parse_file(o.distress, [](std::istream& in) { return parse_distress_csv(in); });
        std::vector<std::string> ids;
        for (const auto& s : sections) ids.push_back(s.section_id());
        const auto pdi = compute_pdi(records, config.weights, ids);
        write_file(dir, "pdi.csv", render([&](std::ostream& s) { write_pdi_csv(s, pdi); }));
        files.push_back("pdi.csv");
        inputs.pdi = pdi;
    }
    if (!o.ratings.empty()) {
        const auto ratings = parse_file(o.ratings, [](std::istream& in) { return parse_rating_csv(in); });
        const auto qa = report::qa_report(ratings, &rms_rows, config);
        write_file(dir, "qa.json", dump(qa));
        files.push_back("qa.json");
        summary["qa_flags"] = qa["flags"];
        inputs.ratings = ratings;
    }
    if (!o.iri.empty()) {
        inputs.iri = parse_file(o.iri, [](std::istream& in) { return parse_iri_csv(in); });
    }
    if (inputs.iri || inputs.ratings || inputs.pdi) {
        const auto fit = run_fit(inputs, dir);
        files.push_back("fit.json");
        ordered_json brief = ordered_json::object();
        for (const auto& p : fit["pairings"]) {
            brief[p["name"].get<std::string>()] = {{"slope", p["slope"]}, {"intercept", p["intercept"]}, {"r2", p["r2"]}};
        }
        summary["fits"] = brief;
        if (inputs.iri) files.push_back("fig7a_rms_iri.svg");
        if (inputs.pdi) files.push_back("fig8a_rms_pdi.svg");
        if (inputs.ratings) files.push_back("fig8b_rms_rqi.svg");
    }

    summary["runs"] = traces.size();
    summary["sections"] = sections.size();
    summary["rms_rows"] = measured.table.rows.size();
    summary["skipped_section_runs"] = measured.table.skipped.size();
    summary["validation_ok"] = validation_ok;
    summary["files"] = files;
    write_file(dir, "report.json", dump(summary));
    out << dump(summary);
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Smartphone pavement roughness pipeline", "roadrough"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--config", o.config_path, "Settings file (TOML subset)");
        sub->add_option("--out-dir", o.out_dir, "Output directory");
    };
    auto geometry = [&](CLI::App* sub) {
        sub->add_option("--trace", o.traces, "Trace CSV files (run id = file stem)")->required();
        sub->add_option("--sections", o.sections, "Section chainage CSV");
        sub->add_option("--route", o.route, "Route polyline CSV");
        sub->add_flag("--mean-subtraction", o.mean_subtraction, "Subtract each run's mean az instead of g");
    };

    auto* validate = app.add_subcommand("validate", "Check trace completeness and cadence");
    common(validate);
    validate->add_option("traces", o.traces, "Trace CSV files")->required();

    auto* segment = app.add_subcommand("segment", "Assign trace samples to sections");
    common(segment);
    geometry(segment);

    auto* rms = app.add_subcommand("rms", "RMS and estimated IRI per section and run");
    common(rms);
    geometry(rms);

    auto* pdi = app.add_subcommand("pdi", "Pavement distress index per section");
    common(pdi);
    pdi->add_option("--distress", o.distress, "Distress survey CSV")->required();
    pdi->add_option("--sections", o.sections, "Section CSV; listed sections without records get PDI 0");

    auto* qa = app.add_subcommand("qa", "Panel and repeatability quality checks");
    common(qa);
    qa->add_option("--ratings", o.ratings, "Rating CSV")->required();
    qa->add_option("--rms", o.rms, "rms.csv from the rms subcommand");

    auto* fit = app.add_subcommand("fit", "Regress IRI, RQI and PDI on RMS");
    common(fit);
    fit->add_option("--rms", o.rms, "rms.csv")->required();
    fit->add_option("--iri", o.iri, "Reference IRI CSV (section_id,iri_mm_per_m)");
    fit->add_option("--ratings", o.ratings, "Rating CSV");
    fit->add_option("--pdi", o.distress, "pdi.csv from the pdi subcommand");
    fit->add_flag("--per-run-fit", o.per_run_fit, "Fit section-run points instead of section means");

    auto* synth_cmd = app.add_subcommand("synth", "Write a synthetic campaign with known ground truth");
    common(synth_cmd);
    synth_cmd->add_option("--seed", o.seed, "Random seed");

    auto* report_cmd = app.add_subcommand("report", "Run the whole pipeline and emit a bundle");
    common(report_cmd);
    report_cmd->add_option("--trace", o.traces, "Trace CSV files");
    report_cmd->add_option("--sections", o.sections, "Section chainage CSV");
    report_cmd->add_option("--route", o.route, "Route polyline CSV");
    report_cmd->add_option("--ratings", o.ratings, "Rating CSV");
    report_cmd->add_option("--distress", o.distress, "Distress survey CSV");
    report_cmd->add_option("--iri", o.iri, "Reference IRI CSV");
    report_cmd->add_option("--seed", o.seed, "Seed for --synthetic");
    report_cmd->add_flag("--synthetic", o.synthetic, "Generate synthetic inputs under <out-dir>/inputs");
    report_cmd->add_flag("--per-run-fit", o.per_run_fit, "Fit section-run points instead of section means");
    report_cmd->add_flag("--mean-subtraction", o.mean_subtraction, "Subtract each run's mean az instead of g");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitIoError;
    }

    try {
        if (validate->parsed()) return cmd_validate(o, out, err);
        if (segment->parsed()) return cmd_segment(o, out, err);
        if (rms->parsed()) return cmd_rms(o, out, err);
        if (pdi->parsed()) return cmd_pdi(o, out, err);
        if (qa->parsed()) return cmd_qa(o, out, err);
        if (fit->parsed()) return cmd_fit(o, out, err);
        if (synth_cmd->parsed()) return cmd_synth(o, out, err);
        if (report_cmd->parsed()) return cmd_report(o, out, err);
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIoError;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitDataError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitDataError;
    }
    return kExitIoError;
}

}  // namespace roadrough
