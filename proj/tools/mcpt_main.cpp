// mcpt — batch CLI: load or build a problem, run the correction pipeline,
// the invariant suite, the diagram expansion, or the oracle comparison, and
// emit machine-readable results. Identical configuration (including seeds)
// produces byte-identical output.
//
// Exit codes: 0 success, 1 I/O or parse error, 2 degenerate level,
// 3 obstruction failure, 4 tracking failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "mcpt/diagrams.hpp"
#include "mcpt/errors.hpp"
#include "mcpt/io.hpp"
#include "mcpt/models.hpp"
#include "mcpt/oracle.hpp"
#include "mcpt/perturbation.hpp"
#include "mcpt/verify.hpp"

namespace {

using nlohmann::json;
using namespace mcpt;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitDegenerate = 2;
constexpr int kExitObstruction = 3;
constexpr int kExitTracking = 4;

struct CommonOptions {
    std::string problem_path;
    std::string model;
    std::size_t n = 0;
    double a = -10.0, b = 10.0;
    std::uint64_t seed = 0;
    bool seed_set = false;

    std::string select = "index:0";
    int order = 1;
    std::string format = "text";
    std::string out_path;
    double kernel_tol = -1.0;  // < 0: library default
};

void add_source_flags(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--problem", opt.problem_path, "problem JSON file");
    cmd->add_option("--model", opt.model,
                    "built-in model: oscillator-quartic | fd1d-harmonic | random");
    cmd->add_option("--n", opt.n, "model dimension (grid points / basis size)");
    cmd->add_option("--a", opt.a, "fd1d interval start");
    cmd->add_option("--b", opt.b, "fd1d interval end");
    auto* seed = cmd->add_option("--seed", opt.seed, "PRNG seed (required for --model random)");
    seed->each([&opt](const std::string&) { opt.seed_set = true; });
}

void add_common_flags(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--select", opt.select, "eigenpair selector: index:<k> or energy:<x>");
    cmd->add_option("--order", opt.order, "number of correction orders K");
    cmd->add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"json", "csv", "text", "dot"}));
    cmd->add_option("--out", opt.out_path, "write output to this path instead of stdout");
    cmd->add_option("--kernel-tol", opt.kernel_tol, "kernel detection tolerance override");
}

models::OperatorPair load_source(const CommonOptions& opt) {
    const bool has_file = !opt.problem_path.empty();
    const bool has_model = !opt.model.empty();
    if (has_file == has_model)
        throw std::invalid_argument("exactly one of --problem or --model is required");
    if (has_file) return models::dense_from_file(opt.problem_path);

    if (opt.model == "oscillator-quartic") {
        if (opt.n == 0) throw std::invalid_argument("--model oscillator-quartic requires --n");
        return models::oscillator_quartic(opt.n);
    }
    if (opt.model == "fd1d-harmonic") {
        if (opt.n == 0) throw std::invalid_argument("--model fd1d-harmonic requires --n");
        const double dx = (opt.b - opt.a) / double(opt.n + 1);
        std::vector<double> v0(opt.n), v1(opt.n);
        for (std::size_t i = 0; i < opt.n; ++i) {
            const double x = opt.a + double(i + 1) * dx;
            v0[i] = 0.5 * x * x;
            v1[i] = x * x * x * x;
        }
        return models::fd1d(opt.n, opt.a, opt.b, v0, v1);
    }
    if (opt.model == "random") {
        if (opt.n == 0) throw std::invalid_argument("--model random requires --n");
        if (!opt.seed_set) throw std::invalid_argument("--model random requires --seed");
        return models::random_dense(opt.n, opt.seed);
    }
    throw std::invalid_argument("unknown model '" + opt.model + "'");
}

EigenSelector parse_selector(const std::string& text) {
    const auto colon = text.find(':');
    if (colon != std::string::npos) {
        const std::string kind = text.substr(0, colon);
        const std::string value = text.substr(colon + 1);
        try {
            if (kind == "index") return EigenSelector::by_index(std::stoi(value));
            if (kind == "energy") return EigenSelector::nearest_to(std::stod(value));
        } catch (const std::exception&) {
            throw std::invalid_argument("bad selector value in '" + text + "'");
        }
    }
    throw std::invalid_argument("selector must be index:<k> or energy:<x>, got '" + text + "'");
}

std::optional<double> kernel_tol_opt(const CommonOptions& opt) {
    if (opt.kernel_tol < 0.0) return std::nullopt;
    return opt.kernel_tol;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open output path: " + out_path);
    f << text;
}

json complex_json(cxd z) { return json{z.real(), z.imag()}; }

json vector_json(const CVec& v) {
    json arr = json::array();
    for (const cxd& z : v) arr.push_back(complex_json(z));
    return arr;
}

std::string g17(double x) { return io::format_double(x); }

// ------------------------------- perturb ------------------------------------

int cmd_perturb(const CommonOptions& opt) {
    const models::OperatorPair pair = load_source(opt);
    if (opt.order < 1) throw std::invalid_argument("--order must be >= 1");
    const PerturbationProblem problem = PerturbationProblem::build(
        pair.h0, pair.v, parse_selector(opt.select), kernel_tol_opt(opt));
    const PerturbationSeries series = corrections(problem, opt.order);

    struct Row {
        int k;
        cxd energy;
        double psi_norm;
        cxd overlap;
        const CVec* psi;
    };
    std::vector<Row> rows;
    rows.push_back({0, series.base.energy, nrm2(series.base.vector), cxd(1.0),
                    &series.base.vector});
    for (std::size_t k = 0; k < series.orders.size(); ++k) {
        const auto& ord = series.orders[k];
        rows.push_back({int(k + 1), ord.energy, nrm2(ord.vector),
                        dotc(series.base.vector, ord.vector), &ord.vector});
    }

    double max_obstruction = 0.0;
    for (double o : series.obstruction_norms) max_obstruction = std::max(max_obstruction, o);

    std::ostringstream out;
    if (opt.format == "json") {
        json doc;
        doc["command"] = "perturb";
        doc["dim"] = problem.h0.dim();
        doc["order"] = opt.order;
        doc["normalization"] = PerturbationSeries::normalization;
        doc["kernel_dim"] = series.base.kernel_dim;
        doc["max_obstruction"] = max_obstruction;
        json orders = json::array();
        for (const Row& r : rows) {
            json row;
            row["k"] = r.k;
            row["energy"] = complex_json(r.energy);
            row["psi_norm"] = r.psi_norm;
            row["overlap"] = complex_json(r.overlap);
            row["psi"] = vector_json(*r.psi);
            orders.push_back(std::move(row));
        }
        doc["orders"] = std::move(orders);
        out << doc.dump(2) << '\n';
    } else if (opt.format == "csv") {
        out << "k,energy_re,energy_im,psi_norm,overlap_re,overlap_im\n";
        for (const Row& r : rows)
            out << r.k << ',' << g17(r.energy.real()) << ',' << g17(r.energy.imag()) << ','
                << g17(r.psi_norm) << ',' << g17(r.overlap.real()) << ','
                << g17(r.overlap.imag()) << '\n';
    } else {
        out << "# corrections through order " << opt.order << " (normalization: "
            << PerturbationSeries::normalization << ")\n";
        out << "#  k        E^(k)                     ||psi^(k)||     (psi0, psi^(k))\n";
        char line[160];
        for (const Row& r : rows) {
            std::snprintf(line, sizeof(line), "%4d  %+.15e %+.8ei  %.8e  %+.3e%+.3ei\n", r.k,
                          r.energy.real(), r.energy.imag(), r.psi_norm, r.overlap.real(),
                          r.overlap.imag());
            out << line;
        }
        out << "# max obstruction: " << g17(max_obstruction) << '\n';
    }
    emit(out.str(), opt.out_path);
    return kExitOk;
}

// ------------------------------- verify -------------------------------------

int cmd_verify(const CommonOptions& opt, int trials) {
    HermitianOperator h = [&] {
        if (!opt.problem_path.empty() || !opt.model.empty()) return load_source(opt).h0;
        if (opt.n == 0) throw std::invalid_argument("verify: need --problem, --model, or --n");
        return models::random_dense(opt.n, opt.seed).h0;
    }();

    const InvariantReport report = run_invariant_suite(h, opt.seed, trials);

    std::ostringstream out;
    if (opt.format == "json") {
        json doc;
        doc["command"] = "verify";
        doc["dim"] = h.dim();
        doc["seed"] = opt.seed;
        doc["trials"] = trials;
        doc["pass"] = report.pass;
        json rows = json::array();
        for (const InvariantRow& r : report.rows)
            rows.push_back({{"name", r.name},
                            {"max_residual", r.max_residual},
                            {"tolerance", r.tolerance},
                            {"pass", r.pass}});
        doc["invariants"] = std::move(rows);
        out << doc.dump(2) << '\n';
    } else if (opt.format == "csv") {
        out << "name,max_residual,tolerance,pass\n";
        for (const InvariantRow& r : report.rows)
            out << r.name << ',' << g17(r.max_residual) << ',' << g17(r.tolerance) << ','
                << (r.pass ? "true" : "false") << '\n';
    } else {
        out << "# invariant suite: dim " << h.dim() << ", seed " << opt.seed << ", " << trials
            << " trials per row\n";
        char line[160];
        for (const InvariantRow& r : report.rows) {
            std::snprintf(line, sizeof(line), "%-24s %.6e  (tol %.1e)  %s\n", r.name.c_str(),
                          r.max_residual, r.tolerance, r.pass ? "ok" : "FAIL");
            out << line;
        }
        out << (report.pass ? "PASS" : "FAIL") << '\n';
    }
    emit(out.str(), opt.out_path);
    return report.pass ? kExitOk : kExitUsage;
}

// ------------------------------ diagrams ------------------------------------

void dot_nodes(const DiagramNode& node, const std::string& prefix, int& next_id,
               std::ostringstream& out) {
    const int id = next_id++;
    const char* label = node.kind == DiagramNodeKind::Homotopy ? "h0"
                        : node.kind == DiagramNodeKind::Vertex ? "Q1"
                        : node.kind == DiagramNodeKind::Fork   ? "fork"
                                                               : "psi0";
    out << "  " << prefix << id << " [label=\"" << label << "\"];\n";
    for (const DiagramNode& child : node.children) {
        const int cid = next_id;
        dot_nodes(child, prefix, next_id, out);
        out << "  " << prefix << id << " -> " << prefix << cid << ";\n";
    }
}

int cmd_diagrams(const CommonOptions& opt) {
    const std::vector<TreeDiagram> diagrams = enumerate_diagrams(opt.order);

    std::optional<double> sum_residual;
    if (!opt.problem_path.empty() || !opt.model.empty()) {
        const models::OperatorPair pair = load_source(opt);
        const PerturbationProblem problem = PerturbationProblem::build(
            pair.h0, pair.v, parse_selector(opt.select), kernel_tol_opt(opt));
        sum_residual = diagram_sum_check(opt.order, problem);
    }

    std::ostringstream out;
    if (opt.format == "json") {
        json doc;
        doc["command"] = "diagrams";
        doc["order"] = opt.order;
        doc["count"] = diagrams.size();
        json list = json::array();
        for (const TreeDiagram& d : diagrams)
            list.push_back({{"coefficient", d.coefficient},
                            {"energy_contributing", is_energy_contributing(d)},
                            {"tokens", render(d, DiagramFormat::Text)}});
        doc["diagrams"] = std::move(list);
        if (sum_residual) doc["sum_residual"] = *sum_residual;
        out << doc.dump(2) << '\n';
    } else if (opt.format == "dot") {
        out << "digraph diagrams_order" << opt.order << " {\n";
        int idx = 0;
        for (const TreeDiagram& d : diagrams) {
            out << "  // coefficient " << d.coefficient << ", energy "
                << (is_energy_contributing(d) ? "yes" : "no") << '\n';
            int next_id = 0;
            dot_nodes(d.root, "d" + std::to_string(idx) + "_n", next_id, out);
            ++idx;
        }
        out << "}\n";
    } else if (opt.format == "csv") {
        out << "coefficient,energy_contributing,tokens\n";
        for (const TreeDiagram& d : diagrams)
            out << d.coefficient << ',' << (is_energy_contributing(d) ? "true" : "false") << ",\""
                << render(d, DiagramFormat::Text) << "\"\n";
    } else {
        out << "# order " << opt.order << ": " << diagrams.size() << " distinct diagrams\n";
        for (const TreeDiagram& d : diagrams) {
            char head[48];
            std::snprintf(head, sizeof(head), "%+3lld  %s  ",
                          static_cast<long long>(d.coefficient),
                          is_energy_contributing(d) ? "E" : ".");
            out << head << render(d, DiagramFormat::Text) << '\n';
        }
        if (sum_residual) out << "# sum residual vs recurrence: " << g17(*sum_residual) << '\n';
    }
    emit(out.str(), opt.out_path);
    return kExitOk;
}

// ------------------------------- oracle -------------------------------------

int cmd_oracle(const CommonOptions& opt, double lambda0, int grid_points, double tol_abs,
               double tol_rel, bool parallel) {
    const models::OperatorPair pair = load_source(opt);
    if (opt.order < 1) throw std::invalid_argument("--order must be >= 1");
    const PerturbationProblem problem = PerturbationProblem::build(
        pair.h0, pair.v, parse_selector(opt.select), kernel_tol_opt(opt));

    const PerturbationSeries engine = corrections(problem, opt.order);
    // Default to a 3x oversampled grid; the coefficient extraction is far
    // less noise-sensitive there than on the minimal 2K+1-point grid.
    const int side = grid_points > 0 ? grid_points : 3 * opt.order;
    const DiagonalizationSeries diag = series_by_diagonalization(
        problem.h0, problem.v, problem.eigendatum, opt.order, lambda0, side, parallel);
    const OracleReport report = compare(engine, diag, tol_abs, tol_rel);

    // Second, algebraically independent route for the low orders.
    const int tb_orders = std::min(opt.order, 3);
    const auto textbook = rs_textbook(problem.h0, problem.v, problem.eigendatum, tb_orders);
    bool textbook_pass = true;
    std::vector<double> textbook_diff(textbook.size());
    for (std::size_t k = 0; k < textbook.size(); ++k) {
        textbook_diff[k] = std::abs(textbook[k].first - engine.orders[k].energy);
        const double scale = std::abs(textbook[k].first);
        textbook_pass = textbook_pass && textbook_diff[k] <= std::max(tol_abs, tol_rel * scale);
    }
    const bool pass = report.pass && textbook_pass;

    std::ostringstream out;
    if (opt.format == "json") {
        json doc;
        doc["command"] = "oracle";
        doc["order"] = opt.order;
        doc["lambda0"] = lambda0;
        doc["tol_abs"] = tol_abs;
        doc["tol_rel"] = tol_rel;
        doc["pass"] = pass;
        json rows = json::array();
        for (const auto& r : report.rows)
            rows.push_back({{"k", r.k},
                            {"engine", complex_json(r.engine_energy)},
                            {"oracle", r.oracle_energy},
                            {"abs_err", r.abs_err},
                            {"rel_err", r.rel_err},
                            {"angle_err", r.angle_err},
                            {"pass", r.pass}});
        doc["rows"] = std::move(rows);
        json tb = json::array();
        for (std::size_t k = 0; k < textbook.size(); ++k)
            tb.push_back({{"k", int(k + 1)},
                          {"energy", complex_json(textbook[k].first)},
                          {"engine_diff", textbook_diff[k]}});
        doc["textbook"] = std::move(tb);
        out << doc.dump(2) << '\n';
    } else if (opt.format == "csv") {
        out << "k,engine_re,engine_im,oracle,abs_err,rel_err,angle_err,pass\n";
        for (const auto& r : report.rows)
            out << r.k << ',' << g17(r.engine_energy.real()) << ',' << g17(r.engine_energy.imag())
                << ',' << g17(r.oracle_energy) << ',' << g17(r.abs_err) << ',' << g17(r.rel_err)
                << ',' << g17(r.angle_err) << ',' << (r.pass ? "true" : "false") << '\n';
    } else {
        char head[96];
        std::snprintf(head, sizeof(head), "# engine vs diagonalization oracle (lambda0 = %g)\n",
                      lambda0);
        out << head;
        out << "#  k   engine E^(k)          oracle E^(k)          abs err    rel err    angle\n";
        char line[200];
        for (const auto& r : report.rows) {
            std::snprintf(line, sizeof(line), "%4d  %+.13e  %+.13e  %.3e  %.3e  %.3e  %s\n", r.k,
                          r.engine_energy.real(), r.oracle_energy, r.abs_err, r.rel_err,
                          r.angle_err, r.pass ? "ok" : "FAIL");
            out << line;
        }
        for (std::size_t k = 0; k < textbook.size(); ++k) {
            std::snprintf(line, sizeof(line),
                          "# textbook k=%zu: E = %+.13e, |engine diff| = %.3e\n", k + 1,
                          textbook[k].first.real(), textbook_diff[k]);
            out << line;
        }
        out << (pass ? "PASS" : "FAIL") << '\n';
    }
    emit(out.str(), opt.out_path);
    return pass ? kExitOk : kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Maurer-Cartan perturbation engine for finite Hermitian eigenproblems"};
    app.require_subcommand(1);

    CommonOptions opt;
    int trials = 100;
    double lambda0 = 1e-2, tol_abs = 1e-8, tol_rel = 1e-6;
    int grid_points = 0;
    bool parallel = false;

    CLI::App* perturb = app.add_subcommand("perturb", "compute correction orders 1..K");
    add_source_flags(perturb, opt);
    add_common_flags(perturb, opt);

    CLI::App* verify = app.add_subcommand("verify", "run the randomized invariant suite");
    add_source_flags(verify, opt);
    add_common_flags(verify, opt);
    verify->add_option("--trials", trials, "random draws per invariant");

    CLI::App* diagrams = app.add_subcommand("diagrams", "enumerate the order-K tree diagrams");
    add_source_flags(diagrams, opt);
    add_common_flags(diagrams, opt);

    CLI::App* oracle = app.add_subcommand("oracle", "compare the engine against both oracles");
    add_source_flags(oracle, opt);
    add_common_flags(oracle, opt);
    oracle->add_option("--lambda0", lambda0, "diagonalization grid spacing");
    oracle->add_option("--grid-points", grid_points,
                       "grid points per side (default: the order K)");
    oracle->add_option("--tol-abs", tol_abs, "absolute tolerance");
    oracle->add_option("--tol-rel", tol_rel, "relative tolerance");
    oracle->add_flag("--parallel", parallel, "diagonalize the lambda grid in parallel");

    CLI11_PARSE(app, argc, argv);

    const auto fail = [](int code, const char* kind, const std::string& msg) {
        std::cerr << "mcpt-error code=" << code << " kind=" << kind << " msg=\"" << msg << "\"\n";
        return code;
    };

    try {
        if (perturb->parsed()) return cmd_perturb(opt);
        if (verify->parsed()) return cmd_verify(opt, trials);
        if (diagrams->parsed()) return cmd_diagrams(opt);
        if (oracle->parsed())
            return cmd_oracle(opt, lambda0, grid_points, tol_abs, tol_rel, parallel);
    } catch (const DegenerateLevel& e) {
        return fail(kExitDegenerate, "DegenerateLevel", e.what());
    } catch (const ObstructionFailure& e) {
        return fail(kExitObstruction, "ObstructionFailure", e.what());
    } catch (const TrackingFailure& e) {
        return fail(kExitTracking, "TrackingFailure", e.what());
    } catch (const HermiticityError& e) {
        return fail(kExitUsage, "HermiticityError", e.what());
    } catch (const std::exception& e) {
        return fail(kExitUsage, "Error", e.what());
    }
    return kExitUsage;
}
