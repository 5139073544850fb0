// polyml - lattice polytope invariants and the learning experiments built on
// them. Subcommands: invariants, dataset gen|label|augment, train, eval, mds,
// enumerate-reflexive-2d, plot.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "polyml/dataio.hpp"
#include "polyml/forest.hpp"
#include "polyml/hilbert.hpp"
#include "polyml/mds.hpp"
#include "polyml/mlp.hpp"
#include "polyml/pluecker.hpp"
#include "polyml/rng.hpp"
#include "polyml/svg.hpp"

namespace {

using namespace polyml;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumeric = 3;

std::uint64_t env_seed(std::uint64_t fallback) {
    if (const char* s = std::getenv("POLYML_SEED")) return std::strtoull(s, nullptr, 10);
    return fallback;
}

unsigned env_threads() {
    if (const char* s = std::getenv("POLYML_THREADS")) {
        long v = std::strtol(s, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    return 1;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw DataError("write failed for '" + path + "'");
}

// ---- invariants ----

int cmd_invariants(const std::string& input, const std::string& output) {
    auto records = read_polytopes_jsonl(input);
    std::vector<PolytopeRecord> labeled;
    std::cout << "id,volume,dual_volume,gorenstein_index,reflexive,codimension,plucker\n";
    int failures = 0;
    for (const PolytopeRecord& r : records) {
        try {
            PolytopeRecord out = label(r.poly, r.id);
            PlueckerCoordinates pc = pluecker(out.poly, true);
            std::ostringstream pstr;
            pstr << '(';
            for (std::size_t i = 0; i < pc.coords.size(); ++i)
                pstr << (i ? ":" : "") << pc.coords[i].get_str();
            pstr << ')';
            std::cout << out.id << ',' << out.labels->volume << ','
                      << rat_to_string(out.labels->dual_volume) << ','
                      << out.labels->gorenstein_index << ','
                      << (out.labels->reflexive ? "true" : "false") << ','
                      << out.labels->codimension << ',' << pstr.str() << '\n';
            out.plucker_variants.clear();
            labeled.push_back(std::move(out));
        } catch (const std::exception& e) {
            ++failures;
            std::cerr << "id " << r.id << ": " << e.what() << '\n';
        }
    }
    if (!output.empty())
        write_polytopes_jsonl(output, labeled, "polyml invariants input=" + input);
    return failures == 0 ? kExitOk : kExitData;
}

// ---- dataset gen / label / augment ----

struct GenArgs {
    int dim = 2;
    std::size_t count = 100;
    long long max_coord = 0;  // 0 = per-dimension default
    long long max_gorenstein = 30;
    std::uint64_t seed = 0;
    std::size_t n_vertices = 0;
    std::size_t min_points = 0, max_points = 0;
    std::string output;
};

int cmd_dataset_gen(const GenArgs& args) {
    std::ostringstream config;
    config << "polyml dataset gen dim=" << args.dim << " count=" << args.count
           << " max_coord=" << args.max_coord << " max_gorenstein=" << args.max_gorenstein
           << " n_vertices=" << args.n_vertices << " seed=" << args.seed;
    std::vector<LatticePolytope> polys;
    if (args.dim == 2) {
        PolygonGenConfig cfg;
        cfg.count = args.count;
        cfg.max_coord = args.max_coord ? args.max_coord : 5;
        cfg.max_gorenstein = args.max_gorenstein;
        cfg.seed = args.seed;
        cfg.fixed_vertex_count = args.n_vertices;
        if (args.min_points) cfg.min_points = args.min_points;
        if (args.max_points) cfg.max_points = args.max_points;
        if (cfg.fixed_vertex_count) cfg.min_points = std::max(cfg.min_points, cfg.fixed_vertex_count);
        polys = generate_fano_polygons(cfg);
    } else {
        Polytope3dGenConfig cfg;
        cfg.count = args.count;
        cfg.max_coord = args.max_coord ? args.max_coord : 3;
        cfg.max_gorenstein = args.max_gorenstein;
        cfg.seed = args.seed;
        cfg.fixed_vertex_count = args.n_vertices;
        if (args.min_points) cfg.min_points = args.min_points;
        if (args.max_points) cfg.max_points = args.max_points;
        if (cfg.fixed_vertex_count) cfg.min_points = std::max(cfg.min_points, cfg.fixed_vertex_count);
        polys = generate_canonical_fano_3d(cfg);
    }
    std::vector<PolytopeRecord> records;
    for (std::size_t i = 0; i < polys.size(); ++i) {
        PolytopeRecord r;
        r.id = static_cast<long long>(i);
        r.poly = polys[i];
        records.push_back(std::move(r));
    }
    write_polytopes_jsonl(args.output, records, config.str());
    std::cout << "generated " << records.size() << " polytopes -> " << args.output << '\n';
    return kExitOk;
}

int cmd_dataset_label(const std::string& input, const std::string& output) {
    auto records = read_polytopes_jsonl(input);
    std::vector<PolytopeRecord> labeled = label_all(records, env_threads());
    write_polytopes_jsonl(output, labeled, "polyml dataset label input=" + input);
    std::cout << "labeled " << labeled.size() << " polytopes -> " << output << '\n';
    return kExitOk;
}

int cmd_dataset_augment(const std::string& input, const std::string& output,
                        std::size_t variants, std::uint64_t seed) {
    auto records = read_polytopes_jsonl(input);
    augment_records(records, variants, seed);
    std::ostringstream config;
    config << "polyml dataset augment input=" << input << " variants=" << variants
           << " seed=" << seed;
    write_polytopes_jsonl(output, records, config.str());
    std::size_t rows = 0;
    for (const auto& r : records) rows += r.plucker_variants.size();
    std::cout << "augmented " << records.size() << " polytopes into " << rows << " rows -> "
              << output << '\n';
    return kExitOk;
}

// ---- train / eval ----

struct ArchSpec {
    std::vector<std::size_t> hidden;
    double alpha = 0.01;
    Loss loss = Loss::logcosh;
    std::size_t batch = 32;
    std::size_t epochs = 20;
};

ArchSpec resolve_arch(const std::string& name, const std::string& hidden_csv, double alpha,
                      const std::string& loss, std::size_t batch, std::size_t epochs) {
    ArchSpec spec;
    if (name == "2d-paper") {
        spec.hidden = {64, 64, 64, 64};
        spec.alpha = 0.01;
        spec.loss = Loss::logcosh;
        spec.batch = 32;
        spec.epochs = 20;
    } else if (name == "3d-paper") {
        spec.hidden = {100};
        spec.alpha = 1e-5;
        spec.loss = Loss::mse;
        spec.batch = 16;
        spec.epochs = 20;
    } else if (name == "custom") {
        std::stringstream ss(hidden_csv);
        std::string tok;
        while (std::getline(ss, tok, ',')) spec.hidden.push_back(std::stoul(tok));
        if (spec.hidden.empty()) throw CLI::ValidationError("--hidden required for --arch custom");
        spec.alpha = alpha;
        spec.loss = loss_from_string(loss);
    } else {
        throw CLI::ValidationError("unknown --arch '" + name + "'");
    }
    if (batch) spec.batch = batch;
    if (epochs) spec.epochs = epochs;
    return spec;
}

std::vector<double> resolve_bins(const std::string& spec, double range) {
    std::vector<double> out;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        if (tok.back() == '%') out.push_back(std::stod(tok.substr(0, tok.size() - 1)) / 100.0 * range);
        else out.push_back(std::stod(tok));
    }
    return out;
}

struct TrainArgs {
    std::string data;
    std::string label = "volume";
    std::string encoding = "plucker";
    std::string arch = "2d-paper";
    std::string hidden;
    double alpha = 0.01;
    std::string loss = "logcosh";
    std::size_t batch = 0;
    std::size_t epochs = 0;
    std::size_t folds = 0;
    double train_frac = 0.0;
    std::uint64_t seed = 0;
    std::size_t pad_to = 0;
    std::string bins = "0.5,2.5%,5%";
    std::string init_from;
    std::string model_kind = "mlp";
    std::string out_prefix;
};

std::string fold_metrics_header() {
    return "fold," + metrics_csv_header() + ",accuracy_bins";
}

std::string bins_string(const Metrics& m) {
    std::ostringstream os;
    os.precision(17);
    for (std::size_t i = 0; i < m.bin_accuracy.size(); ++i)
        os << (i ? ";" : "") << m.bin_accuracy[i].first << '=' << m.bin_accuracy[i].second;
    return os.str();
}

int cmd_train(const TrainArgs& args) {
    if ((args.folds == 0) == (args.train_frac == 0.0))
        throw CLI::ValidationError("pass exactly one of --folds or --train-frac");
    auto records = read_polytopes_jsonl(args.data);
    DatasetBuildOptions opts;
    opts.scheme = encoding_from_string(args.encoding);
    opts.label = args.label;
    opts.pad_to = args.pad_to;
    Dataset data = build_dataset(records, opts);
    double range = data.label_max - data.label_min;
    std::vector<double> half_widths = resolve_bins(args.bins, range);

    std::ostringstream config;
    config << "polyml train data=" << args.data << " label=" << args.label
           << " encoding=" << args.encoding << " arch=" << args.arch << " folds=" << args.folds
           << " train_frac=" << args.train_frac << " seed=" << args.seed
           << " pad_to=" << data.feature_length() << " bins=" << args.bins
           << " init_from=" << (args.init_from.empty() ? "-" : args.init_from)
           << " model=" << args.model_kind;

    std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> splits;
    if (args.folds) {
        splits = kfold_split(data.size(), args.folds, Rng::derive(args.seed, 0xF01d));
    } else {
        std::vector<std::size_t> order(data.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        Rng rng(Rng::derive(args.seed, 0xF01d));
        rng.shuffle(order);
        auto cut = static_cast<std::size_t>(args.train_frac * static_cast<double>(order.size()));
        if (cut == 0 || cut == order.size())
            throw CLI::ValidationError("--train-frac leaves an empty split");
        splits.emplace_back(std::vector<std::size_t>(order.begin(), order.begin() + cut),
                            std::vector<std::size_t>(order.begin() + cut, order.end()));
    }

    const bool classify = args.label == "reflexive";
    std::ostringstream metrics_csv;
    metrics_csv.precision(17);
    metrics_csv << "# " << config.str() << '\n';
    if (classify) metrics_csv << "fold,accuracy\n";
    else metrics_csv << fold_metrics_header() << '\n';

    ArchSpec arch = resolve_arch(args.arch, args.hidden, args.alpha, args.loss, args.batch,
                                 args.epochs);

    for (std::size_t f = 0; f < splits.size(); ++f) {
        Dataset train = data.subset(splits[f].first);
        Dataset test = data.subset(splits[f].second);
        train.label_min = data.label_min;
        train.label_max = data.label_max;

        if (classify && args.model_kind == "forest") {
            RandomForestModel model =
                train_random_forest(train, 70, Rng::derive(args.seed, 0xFF00 + f));
            double acc = forest_accuracy(model, test);
            metrics_csv << f << ',' << acc << '\n';
            std::cout << "fold " << f << ": accuracy " << acc << '\n';
            continue;
        }

        MLPModel model;
        if (!args.init_from.empty()) {
            model = load_mlp(args.init_from);
            if (model.input_dim() != data.feature_length())
                throw DataError("--init-from model expects " +
                                std::to_string(model.input_dim()) + " features, dataset has " +
                                std::to_string(data.feature_length()));
        } else {
            model = make_mlp(data.feature_length(), arch.hidden, classify ? 2 : 1, arch.alpha,
                             classify, Rng::derive(args.seed, 0xA100 + f));
        }
        TrainConfig cfg;
        cfg.batch_size = arch.batch;
        cfg.epochs = arch.epochs;
        cfg.loss = classify ? Loss::mse : arch.loss;
        cfg.seed = Rng::derive(args.seed, 0xB200 + f);
        TrainLog log = train_mlp(model, train, cfg, &test);

        std::string model_path = args.out_prefix + "_fold" + std::to_string(f) + ".mlp";
        save_mlp(model_path, model);
        {
            std::ostringstream log_csv;
            log_csv << "# " << config.str() << " fold=" << f << '\n';
            log_csv << "epoch,train_loss,val_loss\n";
            log_csv.precision(17);
            for (std::size_t e = 0; e < log.train_loss.size(); ++e)
                log_csv << e << ',' << log.train_loss[e] << ',' << log.val_loss[e] << '\n';
            write_text(args.out_prefix + "_fold" + std::to_string(f) + "_log.csv", log_csv.str());
        }

        if (classify) {
            std::size_t hits = 0;
            for (std::size_t i = 0; i < test.size(); ++i) {
                auto p = predict_proba(model, test.features[i].values);
                if ((p[1] > 0.5 ? 1.0 : 0.0) == test.labels[i]) ++hits;
            }
            double acc = static_cast<double>(hits) / static_cast<double>(test.size());
            metrics_csv << f << ',' << acc << '\n';
            std::cout << "fold " << f << ": accuracy " << acc << '\n';
        } else {
            Metrics m = evaluate_regression(model, test, half_widths);
            metrics_csv << f << ',' << metrics_csv_row(m) << ',' << bins_string(m) << '\n';
            std::cout << "fold " << f << ": mae " << m.mae << '\n';
        }
    }
    write_text(args.out_prefix + "_metrics.csv", metrics_csv.str());
    std::cout << "wrote " << args.out_prefix << "_metrics.csv\n";
    return kExitOk;
}

struct EvalArgs {
    std::string model;
    std::string data;
    std::string label = "volume";
    std::string encoding = "plucker";
    std::size_t pad_to = 0;
    std::string bins = "0.5,2.5%,5%";
    std::string output;
    std::string predictions_out;
};

int cmd_eval(const EvalArgs& args) {
    auto records = read_polytopes_jsonl(args.data);
    DatasetBuildOptions opts;
    opts.scheme = encoding_from_string(args.encoding);
    opts.label = args.label;
    opts.pad_to = args.pad_to;
    Dataset data = build_dataset(records, opts);
    MLPModel model = load_mlp(args.model);
    if (model.input_dim() != data.feature_length())
        throw DataError("model expects " + std::to_string(model.input_dim()) +
                        " features, dataset has " + std::to_string(data.feature_length()));
    std::vector<double> half_widths = resolve_bins(args.bins, data.label_max - data.label_min);
    Metrics m = evaluate_regression(model, data, half_widths);

    std::ostringstream config;
    config << "polyml eval model=" << args.model << " data=" << args.data
           << " label=" << args.label << " encoding=" << args.encoding << " bins=" << args.bins;
    std::ostringstream csv;
    csv << "# " << config.str() << '\n'
        << metrics_csv_header() << ",accuracy_bins\n"
        << metrics_csv_row(m) << ',' << bins_string(m) << '\n';
    if (!args.output.empty()) write_text(args.output, csv.str());
    std::cout << csv.str();

    if (!args.predictions_out.empty()) {
        std::vector<double> pred = predict_all(model, data);
        std::ostringstream pcsv;
        pcsv << "# " << config.str() << "\ntruth,predicted\n";
        pcsv.precision(17);
        for (std::size_t i = 0; i < pred.size(); ++i)
            pcsv << data.labels[i] << ',' << pred[i] << '\n';
        write_text(args.predictions_out, pcsv.str());
    }
    return kExitOk;
}

// ---- mds ----

struct MdsArgs {
    std::string data;
    std::string encoding = "plucker";
    std::string label = "volume";
    std::size_t components = 2;
    std::size_t samples = 0;
    std::size_t max_iter = 300;
    std::uint64_t seed = 0;
    std::size_t pad_to = 0;
    std::string output;
    std::string svg;
};

int cmd_mds(const MdsArgs& args) {
    auto records = read_polytopes_jsonl(args.data);
    DatasetBuildOptions opts;
    opts.scheme = encoding_from_string(args.encoding);
    opts.label = args.label;
    opts.pad_to = args.pad_to;
    Dataset data = build_dataset(records, opts);

    std::vector<std::size_t> pick(data.size());
    for (std::size_t i = 0; i < pick.size(); ++i) pick[i] = i;
    if (args.samples && args.samples < data.size()) {
        Rng rng(Rng::derive(args.seed, 0x5a));
        rng.shuffle(pick);
        pick.resize(args.samples);
    }
    std::vector<std::vector<double>> features;
    std::vector<double> labels;
    for (std::size_t i : pick) {
        features.push_back(data.features[i].values);
        labels.push_back(data.labels[i]);
    }

    Embedding emb = mds_embed(features, args.components, args.max_iter, 1e-9, args.seed);

    std::ostringstream config;
    config << "polyml mds data=" << args.data << " encoding=" << args.encoding
           << " label=" << args.label << " components=" << args.components
           << " samples=" << features.size() << " seed=" << args.seed
           << " stress=" << emb.stress << " iterations=" << emb.iterations;
    std::ostringstream csv;
    csv << "# " << config.str() << "\nindex,x0";
    if (args.components == 2) csv << ",x1";
    csv << ",label\n";
    csv.precision(17);
    for (std::size_t i = 0; i < emb.points.size(); ++i) {
        csv << i << ',' << emb.points[i][0];
        if (args.components == 2) csv << ',' << emb.points[i][1];
        csv << ',' << labels[i] << '\n';
    }
    write_text(args.output, csv.str());
    std::cout << "stress " << emb.stress << " after " << emb.iterations << " iterations -> "
              << args.output << '\n';

    if (!args.svg.empty()) {
        SvgOptions svg_opts;
        svg_opts.title = "MDS projection (" + std::to_string(args.components) + " component)";
        svg_opts.x_label = "x0";
        svg_opts.y_label = args.components == 2 ? "x1" : "index";
        svg_opts.comment = config.str();
        std::vector<double> xs, ys;
        for (std::size_t i = 0; i < emb.points.size(); ++i) {
            xs.push_back(emb.points[i][0]);
            ys.push_back(args.components == 2 ? emb.points[i][1] : static_cast<double>(i));
        }
        write_text(args.svg, svg_scatter(xs, ys, labels, svg_opts));
    }
    return kExitOk;
}

// ---- enumerate / plot ----

int cmd_enumerate_reflexive(const std::string& output, long long box) {
    auto classes = enumerate_reflexive_2d(box);
    std::cout << classes.size() << " reflexive polygon classes\n";
    std::vector<PolytopeRecord> records;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        // reflexive polygons need not have lattice-generating vertices (the
        // square conv{(+-1,+-1)} spans the even sublattice), so label the
        // census without that dataset-pipeline requirement
        PolytopeRecord r;
        r.id = static_cast<long long>(i);
        r.poly = classes[i];
        r.labels = compute_labels(classes[i]);
        records.push_back(std::move(r));
    }
    for (const auto& r : records) {
        std::cout << "  id " << r.id << ": n=" << r.poly.vertex_count()
                  << " volume=" << r.labels->volume << " codim=" << r.labels->codimension << '\n';
    }
    if (!output.empty())
        write_polytopes_jsonl(output, records,
                              "polyml enumerate-reflexive-2d box=" + std::to_string(box));
    return kExitOk;
}

struct PlotArgs {
    std::string kind = "truepred";
    std::string input;
    std::string output;
    std::string title;
    std::size_t bins = 40;
};

// Numeric CSV with a header row; comment lines start with '#'.
std::vector<std::vector<double>> read_numeric_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");
    std::vector<std::vector<double>> rows;
    std::string line;
    bool header_seen = false;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        try {
            while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        } catch (const std::exception&) {
            throw DataError(path + ":" + std::to_string(line_no) + ": bad numeric value");
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw DataError(path + ": no data rows");
    return rows;
}

int cmd_plot(const PlotArgs& args) {
    auto rows = read_numeric_csv(args.input);
    SvgOptions opts;
    opts.comment = "polyml plot kind=" + args.kind + " in=" + args.input;
    opts.title = args.title;
    if (args.kind == "truepred") {
        std::vector<double> truth, pred;
        for (const auto& row : rows) {
            truth.push_back(row.at(0));
            pred.push_back(row.at(1));
        }
        opts.x_label = "true";
        opts.y_label = "predicted";
        opts.diagonal = true;
        write_text(args.output, svg_scatter(truth, pred, {}, opts));
    } else if (args.kind == "histogram") {
        std::vector<double> values;
        for (const auto& row : rows) values.push_back(row.back());
        opts.x_label = "value";
        opts.y_label = "count";
        write_text(args.output, svg_histogram(values, args.bins, opts));
    } else if (args.kind == "mds") {
        // columns: index,x0[,x1],label
        std::vector<double> xs, ys, color;
        bool two = rows[0].size() >= 4;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            xs.push_back(rows[i].at(1));
            ys.push_back(two ? rows[i].at(2) : static_cast<double>(i));
            color.push_back(rows[i].back());
        }
        opts.x_label = "x0";
        opts.y_label = two ? "x1" : "index";
        write_text(args.output, svg_scatter(xs, ys, color, opts));
    } else {
        throw CLI::ValidationError("unknown --kind '" + args.kind + "'");
    }
    std::cout << "wrote " << args.output << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lattice polytope invariants and Pluecker-coordinate learning experiments"};
    app.require_subcommand(1);

    // invariants
    std::string inv_input, inv_output;
    CLI::App* inv = app.add_subcommand("invariants", "label polytopes from a JSONL file");
    inv->add_option("input", inv_input, "polytopes.jsonl")->required();
    inv->add_option("-o,--output", inv_output, "labeled JSONL output");

    // dataset
    CLI::App* dataset = app.add_subcommand("dataset", "generate, label or augment corpora");
    dataset->require_subcommand(1);
    GenArgs gen;
    CLI::App* dgen = dataset->add_subcommand("gen", "rejection-sample Fano polytopes");
    dgen->add_option("--dim", gen.dim, "2 or 3")->check(CLI::IsMember({2, 3}));
    dgen->add_option("--count", gen.count, "polytopes to generate")->required();
    dgen->add_option("--max-coord", gen.max_coord, "coordinate box (default 5 / 3)");
    dgen->add_option("--max-gorenstein", gen.max_gorenstein, "Gorenstein index cap");
    dgen->add_option("--seed", gen.seed, "RNG seed");
    dgen->add_option("--n-vertices", gen.n_vertices, "restrict to this vertex count");
    dgen->add_option("--min-points", gen.min_points, "points drawn per attempt (lower)");
    dgen->add_option("--max-points", gen.max_points, "points drawn per attempt (upper)");
    dgen->add_option("-o,--output", gen.output, "output JSONL")->required();

    std::string dl_input, dl_output;
    CLI::App* dlabel = dataset->add_subcommand("label", "compute all invariant labels");
    dlabel->add_option("input", dl_input)->required();
    dlabel->add_option("-o,--output", dl_output)->required();

    std::string da_input, da_output;
    std::size_t da_variants = 3;
    std::uint64_t da_seed = 0;
    CLI::App* daug = dataset->add_subcommand("augment", "attach distinct Pluecker variants");
    daug->add_option("input", da_input)->required();
    daug->add_option("-o,--output", da_output)->required();
    daug->add_option("--variants", da_variants, "variants per polytope (2d default 3, 3d 10)");
    daug->add_option("--seed", da_seed);

    // train
    TrainArgs train;
    CLI::App* tr = app.add_subcommand("train", "train MLP / random-forest models");
    tr->add_option("--data", train.data)->required();
    tr->add_option("--label", train.label,
                   "volume | dual_volume | gorenstein_index | codimension | reflexive");
    tr->add_option("--encoding", train.encoding,
                   "plucker | vertices | plucker+gcd2 | plucker+gcdl1 | onehot | inverse-problem");
    tr->add_option("--arch", train.arch, "2d-paper | 3d-paper | custom");
    tr->add_option("--hidden", train.hidden, "comma list for --arch custom");
    tr->add_option("--alpha", train.alpha, "leaky-ReLU slope for --arch custom");
    tr->add_option("--loss", train.loss, "logcosh | mse (custom arch)");
    tr->add_option("--batch", train.batch, "override batch size");
    tr->add_option("--epochs", train.epochs, "override epoch count");
    tr->add_option("--folds", train.folds, "k-fold cross validation");
    tr->add_option("--train-frac", train.train_frac, "single split fraction");
    tr->add_option("--seed", train.seed);
    tr->add_option("--pad-to", train.pad_to, "feature padding length (0 = widest)");
    tr->add_option("--bins", train.bins, "half widths, absolute or % of label range");
    tr->add_option("--init-from", train.init_from, "warm start from a saved model");
    tr->add_option("--model", train.model_kind, "mlp | forest (reflexive label only)");
    tr->add_option("--out-prefix", train.out_prefix)->required();

    // eval
    EvalArgs eval;
    CLI::App* ev = app.add_subcommand("eval", "evaluate a saved model on a dataset");
    ev->add_option("--model", eval.model)->required();
    ev->add_option("--data", eval.data)->required();
    ev->add_option("--label", eval.label);
    ev->add_option("--encoding", eval.encoding);
    ev->add_option("--pad-to", eval.pad_to);
    ev->add_option("--bins", eval.bins);
    ev->add_option("-o,--output", eval.output, "metrics CSV");
    ev->add_option("--predictions", eval.predictions_out, "truth/prediction CSV");

    // mds
    MdsArgs mds;
    CLI::App* md = app.add_subcommand("mds", "stress-majorization embedding of feature vectors");
    md->add_option("--data", mds.data)->required();
    md->add_option("--encoding", mds.encoding);
    md->add_option("--label", mds.label, "label column copied into the output");
    md->add_option("--components", mds.components)->check(CLI::IsMember({1, 2}));
    md->add_option("--samples", mds.samples, "random subsample size (0 = all)");
    md->add_option("--max-iter", mds.max_iter);
    md->add_option("--seed", mds.seed);
    md->add_option("--pad-to", mds.pad_to);
    md->add_option("-o,--output", mds.output, "embedding CSV")->required();
    md->add_option("--svg", mds.svg, "scatter plot");

    // enumerate-reflexive-2d
    std::string enum_output;
    long long enum_box = 3;
    CLI::App* en = app.add_subcommand("enumerate-reflexive-2d",
                                      "census of reflexive polygons up to GL(2,Z)");
    en->add_option("-o,--output", enum_output);
    en->add_option("--box", enum_box, "vertex coordinate box");

    // plot
    PlotArgs plot;
    CLI::App* pl = app.add_subcommand("plot", "render CSV results as SVG");
    pl->add_option("--kind", plot.kind, "truepred | histogram | mds");
    pl->add_option("--in", plot.input)->required();
    pl->add_option("-o,--output", plot.output)->required();
    pl->add_option("--title", plot.title);
    pl->add_option("--bins", plot.bins);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*inv) return cmd_invariants(inv_input, inv_output);
        if (*dgen) {
            gen.seed = env_seed(gen.seed);
            return cmd_dataset_gen(gen);
        }
        if (*dlabel) return cmd_dataset_label(dl_input, dl_output);
        if (*daug) return cmd_dataset_augment(da_input, da_output, da_variants, env_seed(da_seed));
        if (*tr) {
            train.seed = env_seed(train.seed);
            return cmd_train(train);
        }
        if (*ev) return cmd_eval(eval);
        if (*md) {
            mds.seed = env_seed(mds.seed);
            return cmd_mds(mds);
        }
        if (*en) return cmd_enumerate_reflexive(enum_output, enum_box);
        if (*pl) return cmd_plot(plot);
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << '\n';
        return kExitUsage;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kExitData;
    } catch (const std::invalid_argument& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kExitData;
    } catch (const std::runtime_error& e) {
        std::cerr << "numeric failure: " << e.what() << '\n';
        return kExitNumeric;
    }
    return kExitUsage;
}
