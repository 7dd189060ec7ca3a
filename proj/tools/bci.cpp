// bci: evaluate ∫_{|z|=1} z^β/(z−α) dz by several methods and compare them.
//
//   bci eval   --alpha 2,0 --beta 1/2 --theta pi
//   bci sweep  --modulus 0.2:0.8:0.2 --beta 0.5 --theta pi
//   bci verify --seed 7

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "bci/errors.hpp"
#include "bci/json_writer.hpp"
#include "bci/parallel.hpp"
#include "bci/parse.hpp"
#include "bci/report.hpp"
#include "bci/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitDisagree = 2;

double default_tol() {
    if (const char* env = std::getenv("BCI_DEFAULT_TOL")) {
        try {
            std::size_t used = 0;
            const double v = std::stod(env, &used);
            if (used == std::string(env).size() && v > 0.0) return v;
        } catch (const std::exception&) {
        }
        std::fprintf(stderr, "warning: ignoring BCI_DEFAULT_TOL='%s'\n", env);
    }
    return 1e-8;
}

// Rows go to stdout, or to a temporary file that replaces --out on success.
class Output {
public:
    explicit Output(const std::string& path) : path_(path) {
        if (!path_.empty()) {
            tmp_ = path_ + ".tmp";
            file_ = std::make_unique<std::ofstream>(tmp_, std::ios::binary | std::ios::trunc);
            if (!*file_) throw std::runtime_error("cannot open " + tmp_);
        }
    }

    void write(const std::string& text) {
        std::ostream& os = file_ ? static_cast<std::ostream&>(*file_) : std::cout;
        os << text;
        os.flush();
    }

    void commit() {
        if (!file_) return;
        file_->close();
        std::filesystem::rename(tmp_, path_);
    }

    ~Output() {
        if (file_ && file_->is_open()) {
            file_->close();
            std::error_code ec;
            std::filesystem::remove(tmp_, ec);
        }
    }

private:
    std::string path_;
    std::string tmp_;
    std::unique_ptr<std::ofstream> file_;
};

unsigned resolve_jobs(int jobs) {
    if (jobs > 0) return static_cast<unsigned>(jobs);
    return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<bci::MethodSpec> methods_for(const std::string& text, const bci::ProblemInstance& inst,
                                         const std::optional<bci::RationalBeta>& rational) {
    if (text.empty()) return bci::default_methods(inst, rational);
    return bci::parse_methods(text, rational);
}

int exit_for(bci::Verdict v) {
    switch (v) {
        case bci::Verdict::Agree: return kExitOk;
        case bci::Verdict::Disagree: return kExitDisagree;
        case bci::Verdict::Partial: return kExitError;
    }
    return kExitError;
}

struct Common {
    std::string methods;
    double tol = 1e-8;
    double band = 0.02;
    std::string format;
    std::string out;
    int jobs = 1;
    bool timing = false;
};

void add_common(CLI::App* cmd, Common& c, const std::vector<std::string>& formats) {
    cmd->add_option("--tol", c.tol, "relative agreement tolerance (default 1e-8 or $BCI_DEFAULT_TOL)");
    cmd->add_option("--format", c.format, "output format")->check(CLI::IsMember(formats));
    cmd->add_option("--out", c.out, "write to FILE instead of stdout");
}

void add_eval_options(CLI::App* cmd, Common& c) {
    cmd->add_option("--methods", c.methods, "comma list: theorem,quadrature,series,rational[:m/n]");
    cmd->add_option("--exclusion-band", c.band, "minimum | |alpha| - 1 |")->check(CLI::PositiveNumber);
    cmd->add_flag("--timing", c.timing, "include per-method wall-clock microseconds");
}

int run_eval(const Common& c, const std::string& alpha_text, const std::string& beta_text,
             const std::string& theta_text) {
    const bci::BetaSpec beta = bci::parse_beta(beta_text);
    const bci::ProblemInstance inst{bci::parse_complex(alpha_text), beta.value,
                                    bci::BranchAngle(bci::parse_angle(theta_text)), c.tol, c.band};
    const bci::EvaluationReport rep = bci::evaluate(inst, methods_for(c.methods, inst, beta.rational));

    Output out(c.out);
    if (c.format == "csv") {
        out.write(bci::csv_header() + "\n" + bci::to_csv(rep, 0));
    } else {
        out.write(bci::to_json(rep, c.format != "jsonl", c.timing) + "\n");
    }
    out.commit();
    return exit_for(rep.verdict);
}

struct SweepPoint {
    bci::ProblemInstance inst;
    std::optional<bci::RationalBeta> rational;
};

int run_sweep(const Common& c, const std::string& modulus_text, const std::string& arg_text,
              const std::vector<std::string>& beta_texts, const std::vector<std::string>& theta_texts) {
    const std::vector<double> moduli = bci::parse_real_list(modulus_text);
    const std::vector<double> args = bci::parse_real_list(arg_text);
    std::vector<bci::BetaSpec> betas;
    for (const auto& b : beta_texts) betas.push_back(bci::parse_beta(b));
    std::vector<double> thetas;
    for (const auto& t : theta_texts) thetas.push_back(bci::parse_angle(t));

    std::vector<SweepPoint> grid;
    for (const auto& b : betas)
        for (double t : thetas)
            for (double m : moduli)
                for (double a : args)
                    grid.push_back({{std::polar(m, a), b.value, bci::BranchAngle(t), c.tol, c.band}, b.rational});
    // Method lists are resolved up front so a bad --methods is a usage error.
    std::vector<std::vector<bci::MethodSpec>> methods;
    for (const auto& p : grid) methods.push_back(methods_for(c.methods, p.inst, p.rational));

    const bool csv = c.format == "csv";
    Output out(c.out);
    if (csv) {
        out.write(bci::csv_header() + "\n");
    } else {
        bci::JsonWriter w;
        w.begin_object().key("sweep").begin_object();
        w.key("points").value(static_cast<long>(grid.size()));
        w.key("tol").value(c.tol);
        w.key("exclusion_band").value(c.band);
        w.end_object().end_object();
        out.write(w.str() + "\n");
    }

    const auto rows = bci::parallel_map(grid.size(), resolve_jobs(c.jobs), [&](std::size_t i) {
        std::optional<bci::EvaluationReport> rep;
        if (!bci::on_unit_circle(grid[i].inst)) rep = bci::evaluate(grid[i].inst, methods[i]);
        return rep;
    });

    long agree = 0, disagree = 0, partial = 0, excluded = 0;
    double max_dis = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const long row = static_cast<long>(i);
        if (!rows[i]) {
            ++excluded;
            const std::string status(bci::to_string(bci::ErrorCode::AlphaOnCircle));
            out.write(csv ? bci::excluded_csv(grid[i].inst, status, row)
                          : bci::excluded_json(grid[i].inst, status) + "\n");
            continue;
        }
        const auto& rep = *rows[i];
        switch (rep.verdict) {
            case bci::Verdict::Agree: ++agree; break;
            case bci::Verdict::Disagree: ++disagree; break;
            case bci::Verdict::Partial: ++partial; break;
        }
        max_dis = std::max(max_dis, rep.pairwise_max_relative_disagreement);
        out.write(csv ? bci::to_csv(rep, row) : bci::to_json(rep, false, c.timing) + "\n");
    }

    if (csv) {
        out.write("# summary rows=" + std::to_string(rows.size()) + " agree=" + std::to_string(agree) +
                  " disagree=" + std::to_string(disagree) + " partial=" + std::to_string(partial) +
                  " excluded=" + std::to_string(excluded) + " max_disagreement=" + bci::format_double(max_dis) +
                  " failures=" + std::to_string(disagree + partial) + "\n");
    } else {
        bci::JsonWriter w;
        w.begin_object().key("summary").begin_object();
        w.key("rows").value(static_cast<long>(rows.size()));
        w.key("agree").value(agree);
        w.key("disagree").value(disagree);
        w.key("partial").value(partial);
        w.key("excluded").value(excluded);
        w.key("max_disagreement").value(max_dis);
        w.key("failures").value(disagree + partial);
        w.end_object().end_object();
        out.write(w.str() + "\n");
    }
    out.commit();
    if (disagree > 0) return kExitDisagree;
    return partial > 0 ? kExitError : kExitOk;
}

int run_verify(const Common& c, bci::VerifyOptions opts, const std::vector<std::string>& check_texts,
               const std::vector<std::string>& beta_texts) {
    for (const auto& t : check_texts) {
        std::stringstream ss(t);
        std::string name;
        while (std::getline(ss, name, ',')) opts.checks.push_back(name);
    }
    for (const auto& b : beta_texts) opts.betas.push_back(bci::parse_beta(b).value);
    opts.tol = c.tol;
    opts.jobs = resolve_jobs(c.jobs);
    const bci::VerifyReport rep = bci::run_verify(opts);
    Output out(c.out);
    out.write(bci::to_json(rep, c.format != "jsonl") + "\n");
    out.commit();
    return rep.verdict == bci::Verdict::Agree ? kExitOk : kExitDisagree;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Branch-cut contour integrals of z^beta/(z - alpha) over the unit circle"};
    app.require_subcommand(1);

    Common eval_c, sweep_c, verify_c;
    eval_c.tol = sweep_c.tol = verify_c.tol = default_tol();

    std::string alpha, beta, theta;
    CLI::App* eval = app.add_subcommand("eval", "evaluate one instance by several methods");
    eval->add_option("--alpha", alpha, "alpha as re,im or mod@arg")->required();
    eval->add_option("--beta", beta, "beta as re,im, mod@arg, or m/n")->required();
    eval->add_option("--theta", theta, "cut angle in (0, 2pi); accepts pi, pi/3, 2pi/3")->required();
    add_eval_options(eval, eval_c);
    add_common(eval, eval_c, {"json", "jsonl", "csv"});

    std::string modulus, args = "0";
    std::vector<std::string> sweep_betas, sweep_thetas;
    CLI::App* sweep = app.add_subcommand("sweep", "evaluate a grid of instances");
    sweep->add_option("--modulus", modulus, "|alpha| values: a:b:step or a comma list")->required();
    sweep->add_option("--arg", args, "Arg(alpha) values (default 0)");
    sweep->add_option("--beta", sweep_betas, "beta value; repeat for several")->required();
    sweep->add_option("--theta", sweep_thetas, "cut angle; repeat for several")->required();
    add_eval_options(sweep, sweep_c);
    add_common(sweep, sweep_c, {"json", "jsonl", "csv"});
    sweep->add_option("--jobs", sweep_c.jobs, "worker threads (0: all cores)")->check(CLI::NonNegativeNumber);

    bci::VerifyOptions vopts;
    std::vector<std::string> checks, verify_betas;
    CLI::App* verify = app.add_subcommand("verify", "run the built-in check suite");
    std::string check_help = "checks to run (repeatable or comma list):";
    for (const auto& n : bci::available_checks()) check_help += " " + n;
    verify->add_option("--check", checks, check_help);
    verify->add_option("--seed", vopts.seed, "seed for randomized checks");
    verify->add_option("--nmax", vopts.nmax, "largest n for the delta check")->check(CLI::PositiveNumber);
    verify->add_option("--beta", verify_betas, "beta values for the ode and reconciliation grids");
    verify->add_option("--count", vopts.count, "sample count for randomized checks")->check(CLI::PositiveNumber);
    add_common(verify, verify_c, {"json", "jsonl"});
    verify->add_option("--jobs", verify_c.jobs, "worker threads (0: all cores)")->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitError;
    }
    if (!(eval_c.tol > 0.0 && sweep_c.tol > 0.0 && verify_c.tol > 0.0)) {
        std::fprintf(stderr, "error: --tol must be positive\n");
        return kExitError;
    }

    try {
        if (*eval) return run_eval(eval_c, alpha, beta, theta);
        if (*sweep) return run_sweep(sweep_c, modulus, args, sweep_betas, sweep_thetas);
        if (*verify) return run_verify(verify_c, vopts, checks, verify_betas);
    } catch (const bci::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
    }
    return kExitError;
}
