#include "tradeq/report.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <sstream>

namespace tradeq {

namespace {

using json = nlohmann::ordered_json;

json labelled(const Vector& v, const std::vector<std::string>& labels) {
    json out = json::object();
    for (Index i = 0; i < v.size(); ++i) {
        const auto u = static_cast<std::size_t>(i);
        out[u < labels.size() ? labels[u] : std::to_string(i)] = v(i);
    }
    return out;
}

json labelled(const Matrix& m, const std::vector<std::string>& rows,
              const std::vector<std::string>& cols) {
    json out = json::object();
    for (Index r = 0; r < m.rows(); ++r) {
        const auto u = static_cast<std::size_t>(r);
        out[u < rows.size() ? rows[u] : std::to_string(r)] = labelled(Vector(m.row(r)), cols);
    }
    return out;
}

json components_json(const Components& components, const std::vector<std::string>& labels) {
    json out = json::array();
    for (const auto& component : components) {
        json c = json::array();
        for (std::size_t v : component) c.push_back(v < labels.size() ? labels[v] : std::to_string(v));
        out.push_back(std::move(c));
    }
    return out;
}

json report_json(const ValidationReport& r, const std::vector<std::string>& labels) {
    json violations = json::array();
    for (const Violation& v : r.violations) {
        violations.push_back({{"check", v.check},
                              {"index", v.index},
                              {"label", v.index < labels.size() ? labels[v.index] : ""},
                              {"magnitude", v.magnitude}});
    }
    return {{"passed", r.passed()}, {"violations", std::move(violations)}};
}

json irreducibility_json(const IrreducibilityResult& r, const std::vector<std::string>& labels) {
    return {{"irreducible", r.irreducible}, {"components", components_json(r.components, labels)}};
}

std::string format_double(double v) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] =
        std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
    return ec == std::errc() ? std::string(buf.data(), ptr) : std::string("null");
}

void dump_into(const json& node, std::string& out, int depth) {
    const std::string indent(static_cast<std::size_t>(depth + 1) * 2, ' ');
    const std::string closing(static_cast<std::size_t>(depth) * 2, ' ');
    switch (node.type()) {
        case json::value_t::object: {
            if (node.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (const auto& [key, value] : node.items()) {
                if (!first) out += ",\n";
                first = false;
                out += indent + json(key).dump() + ": ";
                dump_into(value, out, depth + 1);
            }
            out += "\n" + closing + "}";
            return;
        }
        case json::value_t::array: {
            if (node.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            for (std::size_t i = 0; i < node.size(); ++i) {
                if (i) out += ",\n";
                out += indent;
                dump_into(node[i], out, depth + 1);
            }
            out += "\n" + closing + "]";
            return;
        }
        case json::value_t::number_float: {
            const double v = node.get<double>();
            out += std::isfinite(v) ? format_double(v) : "null";
            return;
        }
        default:
            out += node.dump();
            return;
    }
}

}  // namespace

json to_structured(const RunReport& report) {
    json tree;
    tree["format"] = "tradeq-report";
    tree["version"] = 1;
    tree["command"] = std::string(to_string(report.command));
    tree["status"] = report.failure ? "failed" : "ok";
    tree["exit_code"] = report.exit_code();

    json inputs;
    inputs["mode"] = report.input_mode;
    inputs["flows"] = report.flows_path ? json(*report.flows_path) : json(nullptr);
    inputs["imports"] = report.imports_path ? json(*report.imports_path) : json(nullptr);
    inputs["tau"] = report.tau_path;
    inputs["reduction"] = report.reduction ? json(*report.reduction) : json(nullptr);
    inputs["countries"] = report.countries.size();
    inputs["goods"] = report.goods.size();
    inputs["country_labels"] = report.countries;
    inputs["good_labels"] = report.goods;
    inputs["tolerance"] = report.tolerance;
    inputs["max_iterations"] = report.max_iterations;
    tree["inputs"] = std::move(inputs);

    json data = json::object();
    if (report.imports) data["imports"] = labelled(*report.imports, report.goods, report.countries);
    if (report.tau) data["tau"] = labelled(*report.tau, report.countries, report.goods);
    tree["data"] = std::move(data);

    const ValidationSection& v = report.validation;
    json validation;
    validation["passed"] = v.passed();
    if (v.conservation_observed) {
        validation["conservation_observed"] = report_json(*v.conservation_observed, report.goods);
    }
    if (v.positivity) validation["positivity"] = report_json(*v.positivity, report.goods);
    if (v.tau) {
        json tau = report_json(*v.tau, report.countries);
        tau["row_sums"] = labelled(v.tau_row_sums, report.countries);
        validation["tau"] = std::move(tau);
    }
    if (v.coupling) validation["irreducibility"] = irreducibility_json(*v.coupling, report.goods);
    if (v.mixing) {
        validation["mixing_irreducibility"] = irreducibility_json(*v.mixing, report.countries);
    }
    if (v.conservation_ideal) {
        validation["conservation_ideal"] = report_json(*v.conservation_ideal, report.goods);
    }
    tree["validation"] = std::move(validation);

    if (report.exports) {
        const ExportsSection& e = *report.exports;
        json exports;
        exports["ideal"] = labelled(e.ideal, report.goods, report.countries);
        if (e.observed) exports["observed"] = labelled(*e.observed, report.goods, report.countries);
        if (e.difference_max_abs) exports["difference_max_abs"] = *e.difference_max_abs;
        tree["exports"] = std::move(exports);
    }

    if (report.equilibrium) {
        const EquilibriumSection& e = *report.equilibrium;
        json eq;
        eq["prices"] = labelled(e.prices, report.goods);
        eq["lambda"] = e.lambda;
        eq["country_values"] = labelled(e.country_values, report.countries);
        eq["country_shares"] = labelled(e.country_shares, report.countries);
        eq["iterations"] = e.iterations;
        eq["step_delta"] = e.step_delta;
        eq["clearing_residual"] = labelled(e.clearing_residual, report.goods);
        eq["clearing_residual_norm"] = e.clearing_residual_norm;
        eq["balance"] = labelled(e.balance, report.countries);
        eq["balance_norm"] = e.balance_norm;
        eq["stationarity"] = {{"passed", e.stationarity_passed},
                              {"defect_norm", e.stationarity_defect_norm}};
        if (e.observed_balance) {
            eq["observed_balance"] = labelled(*e.observed_balance, report.countries);
        }
        tree["equilibrium"] = std::move(eq);
    }

    if (report.tariff) {
        const TariffSection& t = *report.tariff;
        json tariff;
        tariff["reduction"] = labelled(t.reduction, report.goods);
        tariff["raw_prices"] = labelled(t.raw_prices, report.goods);
        tariff["normalized_prices"] = labelled(t.normalized_prices, report.goods);
        tariff["price_ratios"] = labelled(t.price_ratios, report.goods);
        json increases = json::array();
        for (const PriceIncrease& inc : t.increases) {
            increases.push_back({{"good", report.goods.at(inc.good)}, {"factor", inc.factor}});
        }
        tariff["increases"] = std::move(increases);
        tariff["residual"] = labelled(t.residual, report.goods);
        tariff["residual_norm"] = t.residual_norm;
        tariff["scaled_balance_norm"] = t.scaled_balance_norm;
        tariff["verified"] = t.verified;
        tree["tariff"] = std::move(tariff);
    }

    if (report.failure) {
        const Failure& f = *report.failure;
        json failure;
        failure["kind"] = std::string(to_string(f.kind));
        failure["stage"] = f.stage;
        failure["message"] = f.message;
        failure["components"] = components_json(f.components, report.goods);
        tree["failure"] = std::move(failure);
    }
    return tree;
}

std::string dump_structured(const json& tree) {
    std::string out;
    dump_into(tree, out, 0);
    out += "\n";
    return out;
}

std::string render_structured(const RunReport& report) {
    return dump_structured(to_structured(report));
}

namespace {

void write_vector(std::ostream& os, const std::string& title, const Vector& v,
                  const std::vector<std::string>& labels) {
    os << "  " << title << ":\n";
    for (Index i = 0; i < v.size(); ++i) {
        const auto u = static_cast<std::size_t>(i);
        os << "    " << (u < labels.size() ? labels[u] : std::to_string(i)) << " = "
           << format_double(v(i)) << "\n";
    }
}

void write_matrix(std::ostream& os, const std::string& title, const Matrix& m,
                  const std::vector<std::string>& rows, const std::vector<std::string>& cols) {
    os << "  " << title << " (rows: goods, columns: countries):\n    ";
    for (const auto& c : cols) os << "\t" << c;
    os << "\n";
    for (Index r = 0; r < m.rows(); ++r) {
        os << "    " << rows.at(static_cast<std::size_t>(r));
        for (Index c = 0; c < m.cols(); ++c) os << "\t" << format_double(m(r, c));
        os << "\n";
    }
}

std::string verdict(bool passed) { return passed ? "pass" : "FAIL"; }

void write_check(std::ostream& os, const std::string& name, const ValidationReport& r,
                 const std::vector<std::string>& labels) {
    os << "  " << name << ": " << verdict(r.passed()) << "\n";
    for (const Violation& v : r.violations) {
        os << "    " << v.check << " at "
           << (v.index < labels.size() ? labels[v.index] : std::to_string(v.index))
           << " (magnitude " << format_double(v.magnitude) << ")\n";
    }
}

void write_components(std::ostream& os, const Components& components,
                      const std::vector<std::string>& labels) {
    for (const auto& component : components) {
        os << "    {";
        for (std::size_t i = 0; i < component.size(); ++i) {
            os << (i ? ", " : "") << labels.at(component[i]);
        }
        os << "}\n";
    }
}

}  // namespace

std::string render_text(const RunReport& report) {
    std::ostringstream os;
    os << "tradeq " << to_string(report.command) << ": " << (report.failure ? "FAILED" : "ok")
       << " (exit " << report.exit_code() << ")\n";
    os << "inputs: mode=" << report.input_mode << " countries=" << report.countries.size()
       << " goods=" << report.goods.size() << " tol=" << format_double(report.tolerance)
       << " max_iter=" << report.max_iterations << "\n";

    const ValidationSection& v = report.validation;
    os << "validation: " << verdict(v.passed()) << "\n";
    if (v.conservation_observed) {
        write_check(os, "conservation (observed)", *v.conservation_observed, report.goods);
    }
    if (v.positivity) write_check(os, "positivity", *v.positivity, report.goods);
    if (v.tau) {
        write_check(os, "tau row sums", *v.tau, report.countries);
    }
    if (v.coupling) {
        os << "  irreducibility of t: " << verdict(v.coupling->irreducible) << "\n";
        if (!v.coupling->irreducible) write_components(os, v.coupling->components, report.goods);
    }
    if (v.mixing) {
        os << "  mixing matrix: " << (v.mixing->irreducible ? "irreducible" : "reducible (info)")
           << "\n";
    }
    if (v.conservation_ideal) {
        write_check(os, "conservation (ideal)", *v.conservation_ideal, report.goods);
    }

    if (report.exports) {
        os << "exports:\n";
        write_matrix(os, "ideal B", report.exports->ideal, report.goods, report.countries);
        if (report.exports->observed) {
            write_matrix(os, "observed B", *report.exports->observed, report.goods,
                         report.countries);
            os << "  max |ideal - observed| = "
               << format_double(*report.exports->difference_max_abs) << "\n";
        }
    }

    if (report.equilibrium) {
        const EquilibriumSection& e = *report.equilibrium;
        os << "equilibrium:\n";
        write_vector(os, "prices p0 (simplex)", e.prices, report.goods);
        os << "  lambda = " << format_double(e.lambda) << "\n";
        write_vector(os, "country values d", e.country_values, report.countries);
        write_vector(os, "country shares", e.country_shares, report.countries);
        os << "  iterations = " << e.iterations << ", final step = " << format_double(e.step_delta)
           << "\n";
        os << "  clearing residual norm = " << format_double(e.clearing_residual_norm) << "\n";
        os << "  balance norm = " << format_double(e.balance_norm) << "\n";
        os << "  stationarity: " << verdict(e.stationarity_passed)
           << " (defect " << format_double(e.stationarity_defect_norm) << ")\n";
        if (e.observed_balance) {
            write_vector(os, "observed balance at p0", *e.observed_balance, report.countries);
        }
    }

    if (report.tariff) {
        const TariffSection& t = *report.tariff;
        os << "tariff:\n";
        write_vector(os, "reduction r", t.reduction, report.goods);
        write_vector(os, "raw prices p0/r", t.raw_prices, report.goods);
        write_vector(os, "normalized prices", t.normalized_prices, report.goods);
        write_vector(os, "price ratios", t.price_ratios, report.goods);
        os << "  price increases:";
        if (t.increases.empty()) os << " none";
        for (const PriceIncrease& inc : t.increases) {
            os << " " << report.goods.at(inc.good) << " x" << format_double(inc.factor);
        }
        os << "\n  residual norm = " << format_double(t.residual_norm) << " ("
           << (t.verified ? "verified" : "NOT verified") << ")\n";
        os << "  scaled balance norm = " << format_double(t.scaled_balance_norm) << "\n";
    }

    if (report.failure) {
        const Failure& f = *report.failure;
        os << "failure: " << to_string(f.kind) << " during " << f.stage << "\n  " << f.message
           << "\n";
        if (!f.components.empty() && !report.goods.empty()) {
            os << "  strongly connected components:\n";
            write_components(os, f.components, report.goods);
        }
    }
    return os.str();
}

std::string render(const RunReport& report, OutputFormat format) {
    return format == OutputFormat::Structured ? render_structured(report) : render_text(report);
}

}  // namespace tradeq
