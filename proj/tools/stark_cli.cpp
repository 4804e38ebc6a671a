#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "stark/harness/engines.hpp"

using namespace stark::harness;

int main(int argc, char** argv) {
    CLI::App app{"Stark resonances of hydrogen: RPM, perturbation theory and complex-rotated Laguerre mesh"};
    app.set_config("--config", "", "key = value file; command-line flags override it");
    app.require_subcommand(1);
    app.fallthrough();

    JobConfig job;
    std::string state = "1 0 0";
    std::string format;
    int digits = 0;
    int orders = 0;
    int integral_digits = 0;

    app.add_option("--F", job.field, "field strength (a.u.), decimal text")->capture_default_str();
    app.add_option("--state", state, "ket \"n q m\"")->capture_default_str();
    app.add_option("--digits", digits, "working decimal digits (engine default when omitted)");
    app.add_option("--out", job.out, "write the machine-readable report here");
    app.add_option("--format", format, "csv, json or md")->check(CLI::IsMember({"csv", "json", "md"}));
    app.add_flag("--check", job.check, "compare against the reference catalog; exit 4 on mismatch");

    const auto add_rpm = [&](CLI::App* sub) {
        sub->add_option("--D-from", job.dim_from, "smallest Hankel dimension")->capture_default_str();
        sub->add_option("--D-to", job.dim_to, "largest Hankel dimension")->capture_default_str();
        sub->add_option("--shift", job.shift, "Hankel shift d (0 or 1)")->capture_default_str();
    };
    const auto add_crlm = [&](CLI::App* sub) {
        sub->add_option("--N", job.mesh_size, "mesh points per coordinate")->capture_default_str();
        sub->add_option("--theta", job.thetas, "rotation angles scanned")->delimiter(',')->capture_default_str();
        sub->add_option("--quad-order", job.quad_order, "Gauss-Laguerre order for the integrals (0: minimal exact)");
        sub->add_option("--integral-digits", integral_digits, "round the matrix elements to this many digits");
    };

    const std::map<std::string, Method> verbs{{"rpm", Method::rpm},         {"pt", Method::pt},
                                              {"crlm", Method::crlm},       {"asymptotic", Method::asymptotic},
                                              {"compare", Method::compare}, {"converge", Method::converge}};
    CLI::App* rpm = app.add_subcommand("rpm", "Riccati-Pade resonance (Hankel determinants)");
    add_rpm(rpm);
    CLI::App* pt = app.add_subcommand("pt", "perturbation series sum");
    pt->add_option("--orders", orders, "number of terms summed (optimal truncation when omitted)");
    CLI::App* crlm = app.add_subcommand("crlm", "complex-rotated Laguerre mesh");
    add_crlm(crlm);
    app.add_subcommand("asymptotic", "ground-state width formula");
    CLI::App* compare = app.add_subcommand("compare", "all engines side by side with the reference values");
    add_rpm(compare);
    add_crlm(compare);
    CLI::App* converge = app.add_subcommand("converge", "RPM convergence trace over D");
    add_rpm(converge);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    for (const auto& [name, method] : verbs)
        if (app.got_subcommand(name)) job.method = method;
    if (digits != 0) job.digits = digits;
    if (orders != 0) job.orders = orders;
    if (integral_digits != 0) job.integral_digits = integral_digits;
    job.format = job.method == Method::converge ? Format::csv : Format::md;
    if (format == "csv") job.format = Format::csv;
    if (format == "json") job.format = Format::json;
    if (format == "md") job.format = Format::md;

    Report report;
    try {
        job.state = parse_state(state);
        report = run(job);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }

    try {
        if (!job.out.empty()) {
            write_text(job.out, render(report, job.format));
            std::cout << render_md(report);
        } else {
            std::cout << render(report, job.format);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    for (const ResultRow& r : report.rows)
        if (r.failed) std::cerr << r.method << ": " << r.note << "\n";
    return exit_status(report);
}
