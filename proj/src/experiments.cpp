#include "eegconn/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "eegconn/dataset.hpp"
#include "eegconn/io_util.hpp"

namespace eegconn {

namespace {

void validate_thresholds(const std::vector<double>& thresholds) {
    if (thresholds.empty()) throw ValueError("threshold list must not be empty");
    for (double t : thresholds) {
        if (!(t > 0.0 && t < 1.0)) {
            throw ValueError("threshold " + format_double(t) + " outside (0, 1)");
        }
    }
    for (std::size_t i = 1; i < thresholds.size(); ++i) {
        if (!(thresholds[i] > thresholds[i - 1])) {
            throw ValueError("thresholds must be strictly increasing");
        }
    }
}

std::vector<Stimulus> stimuli_present(const LabeledDataset& ds) {
    std::array<bool, kNumStimuli> present{};
    for (const auto& record : ds.records) {
        present[static_cast<std::size_t>(record.label.stimulus)] = true;
    }
    std::vector<Stimulus> out;
    for (Stimulus s : kAllStimuli) {
        if (present[static_cast<std::size_t>(s)]) out.push_back(s);
    }
    return out;
}

}  // namespace

SweepResult run_sweep(const LabeledDataset& ds, const std::vector<double>& thresholds,
                      const ClassifierSpec& spec, int k, std::uint64_t seed) {
    validate_thresholds(thresholds);
    spec.validate();

    SweepResult sweep;
    for (Stimulus s : stimuli_present(ds)) {
        const LabeledDataset subset = filter_by_stimulus(ds, s);
        for (double rho_th : thresholds) {
            const FeatureMatrix fm = build_feature_matrix(subset, rho_th);
            CvReport report = cross_validate(spec, fm, k, seed);
            sweep.rows.push_back(SweepRow{s, rho_th, spec.kind, report.mean_accuracy,
                                          std::move(report.fold_accuracies), report.fold_hash});
        }
    }
    return sweep;
}

ComparisonTable run_comparison(const LabeledDataset& ds, double rho_th,
                               const std::vector<ClassifierSpec>& specs, int k,
                               std::uint64_t seed) {
    if (!(rho_th > 0.0 && rho_th < 1.0)) throw ValueError("rho_th must lie in (0, 1)");
    if (specs.empty()) throw ValueError("classifier list must not be empty");
    for (const auto& spec : specs) spec.validate();

    ComparisonTable table;
    table.rho_th = rho_th;
    table.folds = k;
    table.seed = seed;
    for (Stimulus s : stimuli_present(ds)) {
        const LabeledDataset subset = filter_by_stimulus(ds, s);
        const FeatureMatrix fm = build_feature_matrix(subset, rho_th);
        for (const auto& spec : specs) {
            const CvReport report = cross_validate(spec, fm, k, seed);
            table.cells.push_back(ComparisonCell{s, spec.kind, report.mean_accuracy});
        }
    }
    return table;
}

void write_sweep_csv(const SweepResult& sweep, const std::filesystem::path& path) {
    if (sweep.rows.empty()) throw ValueError("sweep has no rows");
    const std::size_t k = sweep.rows.front().fold_accuracies.size();
    std::ostringstream out;
    out << "stimulus,rho_th,classifier,mean_accuracy";
    for (std::size_t f = 1; f <= k; ++f) out << ",fold_" << f;
    out << '\n';
    for (const auto& row : sweep.rows) {
        out << to_token(row.stimulus) << ',' << format_double(row.rho_th) << ','
            << to_token(row.classifier) << ',' << format_double(row.mean_accuracy);
        for (double acc : row.fold_accuracies) out << ',' << format_double(acc);
        out << '\n';
    }
    write_text_file(path.string(), out.str());
}

SweepResult read_sweep_csv(const std::filesystem::path& path) {
    const std::string text = read_text_file(path.string());
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw FormatError(path.string() + ": empty sweep CSV");
    const auto header = split_csv_line(line);
    if (header.size() < 5 || header[0] != "stimulus" || header[1] != "rho_th" ||
        header[2] != "classifier" || header[3] != "mean_accuracy") {
        throw FormatError(path.string() + ": unexpected sweep CSV header");
    }

    SweepResult sweep;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const std::string context = path.string() + ", row " + std::to_string(line_no);
        const auto fields = split_csv_line(line);
        if (fields.size() != header.size()) {
            throw FormatError(context + ": has " + std::to_string(fields.size()) +
                              " fields, expected " + std::to_string(header.size()));
        }
        SweepRow row{parse_stimulus(fields[0]), parse_double(fields[1], context),
                     parse_classifier(fields[2]), parse_double(fields[3], context),
                     {},
                     0};
        for (std::size_t f = 4; f < fields.size(); ++f) {
            row.fold_accuracies.push_back(parse_double(fields[f], context));
        }
        sweep.rows.push_back(std::move(row));
    }
    return sweep;
}

void write_comparison_csv(const ComparisonTable& table, const std::filesystem::path& path) {
    std::ostringstream out;
    out << "stimulus,classifier,mean_accuracy\n";
    for (const auto& cell : table.cells) {
        out << to_token(cell.stimulus) << ',' << to_token(cell.classifier) << ','
            << format_double(cell.mean_accuracy) << '\n';
    }
    write_text_file(path.string(), out.str());
}

void write_comparison_json(const ComparisonTable& table, const std::filesystem::path& path) {
    nlohmann::ordered_json doc;
    doc["rho_th"] = table.rho_th;
    doc["folds"] = table.folds;
    doc["seed"] = table.seed;
    auto cells = nlohmann::ordered_json::array();
    for (const auto& cell : table.cells) {
        cells.push_back({{"stimulus", to_token(cell.stimulus)},
                         {"classifier", to_token(cell.classifier)},
                         {"mean_accuracy", cell.mean_accuracy}});
    }
    doc["cells"] = std::move(cells);
    write_text_file(path.string(), doc.dump(2) + "\n");
}

// ---- sweep plot ----

namespace {

constexpr double kWidth = 800.0, kHeight = 500.0;
constexpr double kLeft = 70.0, kRight = 150.0, kTop = 40.0, kBottom = 60.0;
constexpr const char* kSeriesColors[kNumStimuli] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                                    "#9467bd"};

std::string fmt2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

}  // namespace

void emit_plot(const SweepResult& sweep, const std::filesystem::path& path) {
    if (sweep.rows.empty()) throw ValueError("cannot plot an empty sweep");

    double x_min = 1.0, x_max = 0.0;
    for (const auto& row : sweep.rows) {
        x_min = std::min(x_min, row.rho_th);
        x_max = std::max(x_max, row.rho_th);
    }
    if (x_max <= x_min) {
        x_min -= 0.05;
        x_max += 0.05;
    }

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto sx = [&](double rho) { return kLeft + (rho - x_min) / (x_max - x_min) * plot_w; };
    auto sy = [&](double acc) { return kTop + (1.0 - acc) * plot_h; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
    svg << "  <rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
    svg << "  <text x=\"" << fmt2(kWidth / 2) << "\" y=\"22\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"16\">Mean accuracy vs correlation "
           "threshold</text>\n";

    // axes
    svg << "  <line x1=\"" << fmt2(kLeft) << "\" y1=\"" << fmt2(kTop) << "\" x2=\"" << fmt2(kLeft)
        << "\" y2=\"" << fmt2(kTop + plot_h) << "\" stroke=\"black\"/>\n";
    svg << "  <line x1=\"" << fmt2(kLeft) << "\" y1=\"" << fmt2(kTop + plot_h) << "\" x2=\""
        << fmt2(kLeft + plot_w) << "\" y2=\"" << fmt2(kTop + plot_h) << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 10; ++i) {
        const double acc = i / 10.0;
        const double y = sy(acc);
        svg << "  <line x1=\"" << fmt2(kLeft - 4) << "\" y1=\"" << fmt2(y) << "\" x2=\""
            << fmt2(kLeft) << "\" y2=\"" << fmt2(y) << "\" stroke=\"black\"/>\n";
        svg << "  <text x=\"" << fmt2(kLeft - 8) << "\" y=\"" << fmt2(y + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << fmt2(acc)
            << "</text>\n";
    }

    std::vector<double> xticks;
    for (const auto& row : sweep.rows) xticks.push_back(row.rho_th);
    std::sort(xticks.begin(), xticks.end());
    xticks.erase(std::unique(xticks.begin(), xticks.end()), xticks.end());
    for (double rho : xticks) {
        const double x = sx(rho);
        svg << "  <line x1=\"" << fmt2(x) << "\" y1=\"" << fmt2(kTop + plot_h) << "\" x2=\""
            << fmt2(x) << "\" y2=\"" << fmt2(kTop + plot_h + 4) << "\" stroke=\"black\"/>\n";
        svg << "  <text x=\"" << fmt2(x) << "\" y=\"" << fmt2(kTop + plot_h + 18)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << fmt2(rho) << "</text>\n";
    }
    svg << "  <text x=\"" << fmt2(kLeft + plot_w / 2) << "\" y=\"" << fmt2(kHeight - 16)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">correlation "
           "threshold</text>\n";

    // one polyline per stimulus, enum order
    double legend_y = kTop + 10;
    for (Stimulus s : kAllStimuli) {
        std::vector<const SweepRow*> series;
        for (const auto& row : sweep.rows) {
            if (row.stimulus == s) series.push_back(&row);
        }
        if (series.empty()) continue;
        std::sort(series.begin(), series.end(),
                  [](const SweepRow* a, const SweepRow* b) { return a->rho_th < b->rho_th; });
        const char* color = kSeriesColors[static_cast<std::size_t>(s)];
        svg << "  <polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
        for (std::size_t i = 0; i < series.size(); ++i) {
            if (i) svg << ' ';
            svg << fmt2(sx(series[i]->rho_th)) << ',' << fmt2(sy(series[i]->mean_accuracy));
        }
        svg << "\"/>\n";

        const double lx = kLeft + plot_w + 16;
        svg << "  <line x1=\"" << fmt2(lx) << "\" y1=\"" << fmt2(legend_y) << "\" x2=\""
            << fmt2(lx + 24) << "\" y2=\"" << fmt2(legend_y) << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
        svg << "  <text x=\"" << fmt2(lx + 30) << "\" y=\"" << fmt2(legend_y + 4)
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << to_token(s) << "</text>\n";
        legend_y += 20;
    }

    svg << "</svg>\n";
    write_text_file(path.string(), svg.str());
}

}  // namespace eegconn
