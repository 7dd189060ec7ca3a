#include "bci/report.hpp"

#include <algorithm>
#include <chrono>

#include "bci/errors.hpp"
#include "bci/json_writer.hpp"
#include "bci/quadrature.hpp"

namespace bci {

std::string MethodSpec::label() const {
    std::string s(to_string(method));
    if (rational) s += ":" + std::to_string(rational->m()) + "/" + std::to_string(rational->n());
    return s;
}

std::string_view to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::Agree: return "Agree";
        case Verdict::Disagree: return "Disagree";
        case Verdict::Partial: return "Partial";
    }
    return "unknown";
}

double relative_disagreement(cplx a, cplx b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1.0});
}

std::vector<MethodSpec> default_methods(const ProblemInstance& inst, const std::optional<RationalBeta>& rational) {
    std::vector<MethodSpec> m{{Method::TheoremHypergeometric, std::nullopt}, {Method::Quadrature, std::nullopt}};
    if (std::abs(inst.alpha) < 1.0) m.push_back({Method::SeriesDirect, std::nullopt});
    if (rational) m.push_back({Method::RationalLogSum, rational});
    return m;
}

namespace {

MethodResult run(const ProblemInstance& inst, const MethodSpec& spec) {
    switch (spec.method) {
        case Method::TheoremHypergeometric: return eval_theorem(inst);
        case Method::SeriesDirect: return eval_mortini_rupp_series(inst);
        case Method::RationalLogSum:
            if (!spec.rational) throw Error(ErrorCode::InvalidRational, "rational method needs m/n");
            return eval_rational(inst, *spec.rational);
        case Method::Quadrature: {
            const QuadratureResult q = circle_integral(inst);
            MethodResult r;
            r.method = Method::Quadrature;
            r.value = q.value;
            r.error_estimate = q.abs_error_estimate;
            r.diagnostics["regime"] = std::abs(inst.alpha) < 1.0 ? "inner" : "outer";
            r.diagnostics["subdivisions"] = std::to_string(q.subdivisions);
            if (!q.converged) throw Error(ErrorCode::NoConvergence, "quadrature budget exhausted");
            return r;
        }
    }
    throw Error(ErrorCode::NotApplicable, "unknown method");
}

}  // namespace

EvaluationReport evaluate(const ProblemInstance& inst, const std::vector<MethodSpec>& methods) {
    EvaluationReport rep{inst, {}, 0.0, Verdict::Agree};
    bool failed = false;
    for (const MethodSpec& spec : methods) {
        MethodOutcome out;
        out.spec = spec;
        const auto start = std::chrono::steady_clock::now();
        try {
            out.result = run(inst, spec);
        } catch (const Error& e) {
            out.status = std::string(to_string(e.code()));
            out.message = e.what();
            out.applicable = e.code() != ErrorCode::NotApplicable;
            failed = failed || out.applicable;
        }
        out.micros = std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - start).count();
        rep.results.push_back(std::move(out));
    }

    int ok = 0;
    for (std::size_t i = 0; i < rep.results.size(); ++i) {
        if (!rep.results[i].result) continue;
        ++ok;
        for (std::size_t j = i + 1; j < rep.results.size(); ++j) {
            if (!rep.results[j].result) continue;
            rep.pairwise_max_relative_disagreement =
                std::max(rep.pairwise_max_relative_disagreement,
                         relative_disagreement(rep.results[i].result->value, rep.results[j].result->value));
        }
    }
    if (!(rep.pairwise_max_relative_disagreement < inst.tol)) {
        rep.verdict = Verdict::Disagree;
    } else if (failed || ok == 0) {
        rep.verdict = Verdict::Partial;
    }
    return rep;
}

namespace {

void write_instance(JsonWriter& w, const ProblemInstance& inst) {
    w.key("instance").begin_object();
    w.key("alpha").value(inst.alpha);
    w.key("beta").value(inst.beta);
    w.key("theta").value(inst.theta.value());
    w.key("tol").value(inst.tol);
    w.end_object();
}

std::string csv_prefix(const ProblemInstance& inst, long row) {
    return std::to_string(row) + "," + format_double(inst.alpha.real()) + "," + format_double(inst.alpha.imag()) +
           "," + format_double(inst.beta.real()) + "," + format_double(inst.beta.imag()) + "," +
           format_double(inst.theta.value());
}

}  // namespace

std::string to_json(const EvaluationReport& report, bool pretty, bool timing) {
    JsonWriter w(pretty);
    w.begin_object();
    write_instance(w, report.instance);
    w.key("status").value("ok");
    w.key("results").begin_array();
    for (const MethodOutcome& o : report.results) {
        w.begin_object();
        w.key("method").value(o.spec.label());
        if (o.result) {
            w.key("value").value(o.result->value);
            w.key("error_estimate").value(o.result->error_estimate);
        } else {
            w.key("value").null();
            w.key("error_estimate").null();
        }
        w.key("status").value(o.status);
        if (!o.message.empty()) w.key("message").value(o.message);
        if (o.result && !o.result->diagnostics.empty()) {
            w.key("diagnostics").begin_object();
            for (const auto& [k, v] : o.result->diagnostics) w.key(k).value(v);
            w.end_object();
        }
        if (timing) w.key("time_us").value(o.micros);
        w.end_object();
    }
    w.end_array();
    w.key("disagreement").value(report.pairwise_max_relative_disagreement);
    w.key("verdict").value(to_string(report.verdict));
    w.end_object();
    return w.str();
}

std::string excluded_json(const ProblemInstance& inst, std::string_view status) {
    JsonWriter w(false);
    w.begin_object();
    write_instance(w, inst);
    w.key("status").value(status);
    w.key("results").begin_array().end_array();
    w.key("disagreement").null();
    w.key("verdict").null();
    w.end_object();
    return w.str();
}

std::string csv_header() {
    return "row,alpha_re,alpha_im,beta_re,beta_im,theta,method,value_re,value_im,error_estimate,status,"
           "disagreement,verdict";
}

std::string to_csv(const EvaluationReport& report, long row) {
    std::string out;
    const std::string prefix = csv_prefix(report.instance, row);
    const std::string tail = format_double(report.pairwise_max_relative_disagreement) + "," +
                             std::string(to_string(report.verdict));
    for (const MethodOutcome& o : report.results) {
        out += prefix + "," + o.spec.label() + ",";
        if (o.result) {
            out += format_double(o.result->value.real()) + "," + format_double(o.result->value.imag()) + "," +
                   format_double(o.result->error_estimate);
        } else {
            out += ",,";
        }
        out += "," + o.status + "," + tail + "\n";
    }
    return out;
}

std::string excluded_csv(const ProblemInstance& inst, std::string_view status, long row) {
    return csv_prefix(inst, row) + ",,,,," + std::string(status) + ",,\n";
}

}  // namespace bci
