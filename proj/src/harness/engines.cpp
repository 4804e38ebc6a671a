#include "stark/harness/engines.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>

#include "stark/crlm/blocks.hpp"
#include "stark/harness/catalog.hpp"
#include "stark/harness/decimal.hpp"
#include "stark/pt/series.hpp"
#include "stark/rpm/solver.hpp"

namespace stark::harness {

namespace {

constexpr int kGuardDigits = 15;

std::string sci(double x, int significant = 2) {
    std::ostringstream os;
    os.precision(significant - 1);
    os << std::scientific << x;
    return os.str();
}

std::string sci(const Real& x, int significant = 2) { return x.is_zero() ? "0" : x.to_sci(significant); }

Real field_value(const JobConfig& c, const PrecisionContext& ctx) { return parse_decimal(c.field).value(ctx); }

bool zero_field(const JobConfig& c) { return parse_decimal(c.field).digits == "0"; }

double field_double(const JobConfig& c) { return field_value(c, PrecisionContext(30)).to_double(); }

int clamp_digits(double log10_rel, int cap) {
    if (!std::isfinite(log10_rel)) return cap;
    return std::clamp(static_cast<int>(std::floor(-log10_rel)), 1, cap);
}

std::string join_ints(const std::vector<int>& v) {
    std::string s;
    for (int x : v) s += (s.empty() ? "" : " ") + std::to_string(x);
    return s;
}

ResultRow failed_row(std::string method, const std::exception& e) {
    ResultRow r;
    r.method = std::move(method);
    r.source = "computed";
    r.failed = true;
    r.note = std::string("engine error: ") + e.what();
    return r;
}

Verdict verdict(std::string name, bool pass, std::string detail) { return {std::move(name), pass, std::move(detail)}; }

}  // namespace

RpmRun run_rpm(const JobConfig& c) {
    const double f = field_double(c);
    const int rule = rpm::precision_rule(f);
    const int digits = c.digits.value_or(rule);
    if (digits < rule)
        throw ConfigError("rpm at F = " + c.field + " needs --digits >= " + std::to_string(rule) + ", got " +
                          std::to_string(digits));
    const PrecisionContext ctx(digits);
    const Real field = field_value(c, ctx);
    const rpm::Seed seed = rpm::seed_from_perturbation(c.state, field, ctx);
    rpm::SolveOptions opts;
    opts.guard_digits = kGuardDigits;

    RpmRun out{ResultRow{}, rpm::converge_scan(field, c.state.m, seed, c.dim_from, c.dim_to, c.shift, ctx, opts),
               digits};
    const rpm::ResonanceEstimate& fin = out.trace.final;
    const int cap = digits - kGuardDigits;

    ResultRow& row = out.row;
    row.method = "rpm";
    row.source = "computed";
    int sig = 6;
    if (fin.conv_log10) {
        sig = clamp_digits(*fin.conv_log10, cap);
        row.re_uncertainty = sci(abs(fin.energy.re) * hp::pow10(-sig, ctx));
    }
    row.re = format_decimal(fin.energy.re, sig);
    if (fin.gamma.is_zero() || zero_field(c)) {
        row.gamma = fin.gamma.is_zero() ? "0" : sci(fin.gamma, 2);
    } else {
        int gsig = 6;
        const rpm::TraceRow& last = out.trace.rows.back();
        if (last.log10_rel_im) gsig = clamp_digits(last.log10_rel_im->to_double(), 15);
        row.gamma = format_decimal(fin.gamma, gsig);
        row.gamma_uncertainty = sci(std::pow(10.0, -gsig));
    }
    row.note = "D = " + std::to_string(out.trace.rows.front().dim) + ".." + std::to_string(fin.dim) +
               ", d = " + std::to_string(c.shift) + ", " + std::to_string(digits) + " digits";
    if (!out.trace.reseeded_at.empty()) row.note += ", reseeded at D = " + join_ints(out.trace.reseeded_at);
    if (!out.trace.skipped_at.empty()) row.note += ", skipped D = " + join_ints(out.trace.skipped_at);
    return out;
}

ResultRow run_pt(const JobConfig& c) {
    const int terms = c.orders.value_or(0);
    const int need = (terms + 1) / 2 + 30;
    const int digits = c.digits.value_or(std::max(130, need));
    if (digits < need)
        throw ConfigError("pt with " + std::to_string(terms) + " terms needs --digits >= " + std::to_string(need));
    const int order = std::max(terms + 1, std::min(200, 2 * (digits - 30)));
    const PrecisionContext ctx(digits);
    const Real field = field_value(c, ctx);
    const pt::PTSeries series = pt::pt_series(c.state, order, ctx);

    ResultRow row;
    row.method = "pt";
    row.source = "computed";
    Real value(ctx), err(ctx);
    if (field.is_zero()) {
        value = series.energy[0];
        row.note = "unperturbed level";
    } else {
        const pt::TruncationReport t = pt::optimal_truncation(series, field);
        // remainder of a factorially divergent series cut at its smallest term
        err = t.error_estimate * sqrt(Real(std::acos(-1.0) * t.k_opt / 2.0, ctx));
        value = t.partial_sum;
        row.note = "optimal truncation at k = " + std::to_string(t.k_opt);
        if (!t.divergent_regime) row.note += " (terms still decreasing at the last order)";
        if (c.orders) {
            value = series.partial_sum(field, terms - 1);
            err += abs(t.partial_sum - value);
            row.note = std::to_string(terms) + " terms";
        }
    }
    const int cap = digits - 10;
    int sig = cap;
    if (!err.is_zero() && !value.is_zero()) sig = clamp_digits(log10(err / abs(value)).to_double(), cap);
    row.re = format_decimal(value, c.orders ? cap : std::min(cap, sig + 2));
    row.re_uncertainty = sci(err);
    return row;
}

ResultRow run_crlm(const JobConfig& c) {
    const int digits = c.digits.value_or(30);
    const PrecisionContext ctx(digits);
    const double f = field_double(c);
    const PrecisionContext seed_ctx(60);
    const rpm::Seed seed = rpm::seed_from_perturbation(c.state, field_value(c, seed_ctx), seed_ctx);

    crlm::AssemblyOptions opts;
    opts.quad_order = c.quad_order;
    opts.integral_digits = c.integral_digits;
    const crlm::SecularBlocks blocks = crlm::assemble_blocks(c.mesh_size, c.state.m, ctx, opts);
    const auto spectra = crlm::rotated_spectra(blocks, f, c.thetas);
    const crlm::ResonanceCandidate cand =
        crlm::select_resonance(spectra, crlm::cplx(seed.energy.re.to_double(), 0.0), blocks, f);

    ResultRow row;
    row.method = "crlm";
    row.source = "computed";
    const PrecisionContext out_ctx(30);
    row.re = format_decimal(Real(static_cast<double>(cand.energy.real()), out_ctx), 16);
    if (cand.below_resolution) {
        double lo = cand.per_theta.front().imag(), hi = lo;
        for (crlm::cplx z : cand.per_theta) {
            lo = std::min(lo, z.imag());
            hi = std::max(hi, z.imag());
        }
        const double bound = 2.0 * std::max({std::fabs(static_cast<double>(cand.energy.imag())), hi - lo, 1e-30});
        row.gamma = "< 1e" + std::to_string(static_cast<int>(std::ceil(std::log10(bound))));
    } else {
        row.gamma = format_decimal(Real(cand.gamma(), out_ctx), 12);
    }
    std::ostringstream note;
    note << "N = " << c.mesh_size << ", theta = " << cand.theta_used << ", |dE/dtheta| = " << sci(cand.stability)
         << ", " << digits << " digit assembly";
    if (c.integral_digits) note << ", integrals rounded to " << *c.integral_digits << " digits";
    row.note = note.str();
    return row;
}

ResultRow run_asymptotic(const JobConfig& c) {
    const PrecisionContext ctx(40);
    Real width(ctx);
    try {
        width = pt::asymptotic_width(field_value(c, ctx), ctx);
    } catch (const pt::FormulaDomainError& e) {
        throw ConfigError(e.what());
    }
    ResultRow row;
    row.method = "asymptotic";
    row.source = "computed";
    row.gamma = format_decimal(width, 10);
    // the expansion stops at F^2
    row.gamma_uncertainty = "1e-4";
    return row;
}

std::vector<Verdict> cross_validate(const std::vector<ResultRow>& rows, const ToleranceSpec& tol) {
    const PrecisionContext ctx(120);
    const Real re_abs = parse_decimal(tol.re_abs).value(ctx);
    const Real gamma_rel = parse_decimal(tol.gamma_rel).value(ctx);
    const auto unc = [&](const std::string& s) { return s.empty() ? Real(ctx) : parse_decimal(s).value(ctx); };

    std::vector<Verdict> out;
    std::vector<const ResultRow*> ok;
    for (const ResultRow& r : rows) {
        if (r.source != "computed") continue;
        if (r.failed)
            out.push_back(verdict(r.method, false, r.note));
        else
            ok.push_back(&r);
    }
    for (std::size_t i = 0; i < ok.size(); ++i)
        for (std::size_t j = i + 1; j < ok.size(); ++j) {
            const ResultRow& a = *ok[i];
            const ResultRow& b = *ok[j];
            const std::string pair = a.method + " vs " + b.method;
            if (!a.re.empty() && !b.re.empty()) {
                const Real diff = abs(parse_decimal(a.re).value(ctx) - parse_decimal(b.re).value(ctx));
                Real allowed = unc(a.re_uncertainty) + unc(b.re_uncertainty);
                if (allowed < re_abs) allowed = re_abs;
                out.push_back(verdict(pair + ": Re E", diff <= allowed,
                                      "|dRe E| = " + sci(diff) + ", allowed " + sci(allowed)));
            }
            if (a.gamma.empty() || b.gamma.empty()) continue;
            const Decimal ga = parse_decimal(a.gamma), gb = parse_decimal(b.gamma);
            if (ga.bound && gb.bound) continue;
            if (ga.bound || gb.bound) {
                const Decimal& bound = ga.bound ? ga : gb;
                const Decimal& value = ga.bound ? gb : ga;
                const std::string limit = bound.text.substr(bound.text.find_first_not_of("< "));
                const bool consistent = value.value(ctx) < bound.value(ctx);
                out.push_back(verdict(pair + ": Gamma", consistent,
                                      consistent ? "bound consistent (" + value.text + " < " + limit + ")"
                                                 : "bound violated (" + value.text + " >= " + limit + ")"));
                continue;
            }
            const Real va = ga.value(ctx), vb = gb.value(ctx);
            const Real scale = abs(va) < abs(vb) ? abs(vb) : abs(va);
            if (scale.is_zero()) {
                out.push_back(verdict(pair + ": Gamma", true, "both zero"));
                continue;
            }
            const Real rel = abs(va - vb) / scale;
            Real allowed = unc(a.gamma_uncertainty) + unc(b.gamma_uncertainty);
            if (allowed < gamma_rel) allowed = gamma_rel;
            out.push_back(verdict(pair + ": Gamma", rel <= allowed,
                                  "relative dGamma = " + sci(rel) + ", allowed " + sci(allowed)));
        }
    return out;
}

bool has_reference(Method method, const pt::StateLabel& state, const std::string& field) {
    if (parse_decimal(field).digits == "0") return method != Method::asymptotic;
    const auto has = [&](std::string_view s) { return find_reference(s, state, field).has_value(); };
    switch (method) {
        case Method::rpm:
        case Method::converge: return has(source::rpm_string) || has(source::table2_crlm);
        case Method::pt: return has(source::pt_string) || has(source::rpm_string);
        case Method::crlm: return has(source::table1_crlm_bound) || has(source::table2_crlm);
        case Method::asymptotic: return has(source::table1_asymptotic);
        case Method::compare: return !references_for(state, field).empty();
    }
    return false;
}

std::vector<Verdict> check_row(const ResultRow& row, const JobConfig& c) {
    std::vector<Verdict> out;
    const std::string who = row.method + " " + c.state.ket();
    if (row.failed) {
        out.push_back(verdict(who, false, row.note));
        return out;
    }
    const PrecisionContext ctx(120);

    if (zero_field(c)) {
        const int n = c.state.n();
        const Real exact = Real(-1L, ctx) / static_cast<long>(2 * n * n);
        if (!row.re.empty()) {
            const Real diff = abs(parse_decimal(row.re).value(ctx) - exact);
            // the mesh weight e^{-x/2} carries the n = 1 decay; higher levels are variational
            const double tol = row.method != "crlm" ? 1e-40 : n == 1 ? 1e-12 : 1e-6;
            out.push_back(verdict(who + ": Re E = -1/(2n^2)", diff.to_double() <= tol,
                                  "|Re E - exact| = " + sci(diff) + ", allowed " + sci(tol)));
        }
        if (!row.gamma.empty()) {
            const Decimal g = parse_decimal(row.gamma);
            const double tol = row.method != "crlm" ? 1e-40 : n == 1 ? 1e-10 : 1e-4;
            const bool pass = g.value(ctx).to_double() <= tol;
            out.push_back(verdict(who + ": Gamma = 0", pass, "Gamma " + row.gamma + ", allowed " + sci(tol)));
        }
        return out;
    }

    const auto digits_check = [&](std::string name, const std::string& got, const ReferenceEntry& ref,
                                  const std::string& want, int need) {
        const int agree = agreeing_digits(parse_decimal(got).value(ctx), parse_decimal(want).value(ctx), 100);
        out.push_back(verdict(std::move(name) + " vs " + ref.source, agree >= need,
                              got + " vs " + want + ": " + std::to_string(agree) + " digits, need " +
                                  std::to_string(need)));
    };
    const auto printed_check = [&](std::string name, const std::string& got, const ReferenceEntry& ref,
                                   const std::string& want) {
        const Decimal d = parse_decimal(want);
        const bool pass = within_last_place(parse_decimal(got).value(ctx), d, ctx);
        out.push_back(verdict(std::move(name) + " vs " + ref.source, pass,
                              got + " vs " + want + " (all " + std::to_string(d.significant()) + " printed digits)"));
    };
    const auto ref = [&](std::string_view s) { return find_reference(s, c.state, c.field); };

    if (row.method == "rpm") {
        if (auto r = ref(source::rpm_string)) digits_check(who + ": Re E", row.re, *r, r->re, 40);
        if (auto r = ref(source::table1_rpm)) digits_check(who + ": Gamma", row.gamma, *r, r->gamma, 6);
        if (auto r = ref(source::table2_crlm)) {
            digits_check(who + ": Re E", row.re, *r, r->re, 12);
            digits_check(who + ": Gamma", row.gamma, *r, r->gamma, 6);
        }
    } else if (row.method == "pt") {
        const bool hundred_thirty = c.orders && *c.orders == 130;
        if (auto r = ref(source::pt_string); r && hundred_thirty) {
            printed_check(who + ": E", row.re, *r, r->re);
        } else if (auto r = ref(source::rpm_string)) {
            const Real diff = abs(parse_decimal(row.re).value(ctx) - parse_decimal(r->re).value(ctx));
            const Real allowed = parse_decimal(row.re_uncertainty).value(ctx) + hp::pow10(-60, ctx);
            out.push_back(verdict(who + ": E vs " + r->source, diff <= allowed,
                                  "|dE| = " + sci(diff) + ", allowed " + sci(allowed)));
        }
    } else if (row.method == "crlm") {
        if (auto r = ref(source::table1_crlm_bound)) {
            printed_check(who + ": Re E", row.re, *r, r->re);
            const Decimal g = parse_decimal(row.gamma), bound = parse_decimal(r->gamma);
            const bool pass = g.value(ctx) <= bound.value(ctx);
            out.push_back(verdict(who + ": Gamma vs " + r->source, pass, "Gamma " + row.gamma + " vs " + r->gamma));
        }
        if (auto r = ref(source::table2_crlm)) {
            digits_check(who + ": Re E", row.re, *r, r->re, 12);
            digits_check(who + ": Gamma", row.gamma, *r, r->gamma, 6);
        }
    } else if (row.method == "asymptotic") {
        if (auto r = ref(source::table1_asymptotic)) printed_check(who + ": Gamma", row.gamma, *r, r->gamma);
    }
    return out;
}

Report run(const JobConfig& c) {
    c.validate();
    if (c.check && !has_reference(c.method, c.state, c.field))
        throw ConfigError("--check: no reference values for " + std::string(method_name(c.method)) + " " +
                          c.state.ket() + " at F = " + c.field);
    Report report;
    report.config = c;

    const auto guarded = [](const char* name, auto&& fn) -> ResultRow {
        try {
            return fn();
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            return failed_row(name, e);
        }
    };

    switch (c.method) {
        case Method::rpm:
        case Method::converge: {
            try {
                RpmRun r = run_rpm(c);
                report.rows.push_back(r.row);
                if (c.method == Method::converge) {
                    report.trace = std::move(r.trace);
                    report.trace_digits = r.digits;
                }
            } catch (const ConfigError&) {
                throw;
            } catch (const std::exception& e) {
                report.rows.push_back(failed_row("rpm", e));
            }
            break;
        }
        case Method::pt: report.rows.push_back(guarded("pt", [&] { return run_pt(c); })); break;
        case Method::crlm: report.rows.push_back(guarded("crlm", [&] { return run_crlm(c); })); break;
        case Method::asymptotic: report.rows.push_back(guarded("asymptotic", [&] { return run_asymptotic(c); })); break;
        case Method::compare: {
            JobConfig others = c;
            others.digits.reset();
            const double f = field_double(c);
            const bool asymptotic = c.state == pt::StateLabel(0, 0, 0) && f > 0 && f <= 0.05;
            std::vector<std::future<ResultRow>> jobs;
            jobs.push_back(std::async(std::launch::async, [&] { return guarded("rpm", [&] { return run_rpm(c).row; }); }));
            jobs.push_back(std::async(std::launch::async, [&] { return guarded("pt", [&] { return run_pt(others); }); }));
            jobs.push_back(
                std::async(std::launch::async, [&] { return guarded("crlm", [&] { return run_crlm(others); }); }));
            if (asymptotic)
                jobs.push_back(std::async(std::launch::async,
                                          [&] { return guarded("asymptotic", [&] { return run_asymptotic(others); }); }));
            for (auto& j : jobs) report.rows.push_back(j.get());
            report.verdicts = cross_validate(report.rows);
            for (const ReferenceEntry& e : references_for(c.state, c.field)) {
                ResultRow r;
                r.method = "reference";
                r.re = e.re;
                r.gamma = e.gamma;
                r.source = e.source;
                r.note = e.note;
                report.rows.push_back(std::move(r));
            }
            break;
        }
    }

    if (c.check)
        for (const ResultRow& r : report.rows)
            if (r.source == "computed") {
                JobConfig rc = c;
                if (c.method == Method::compare && r.method == "pt") rc.orders.reset();
                for (Verdict& v : check_row(r, rc)) report.verdicts.push_back(std::move(v));
            }
    return report;
}

int exit_status(const Report& report) {
    if (report.engine_failed()) return 3;
    if (report.config.check && report.checks_failed()) return 4;
    return 0;
}

}  // namespace stark::harness
