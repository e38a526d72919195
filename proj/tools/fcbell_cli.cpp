// Command-line front end: expression construction, exact and closed-form
// bounds, reduction checks, GHZ phase optimization, behavior classification
// and closed-form sweeps.
//
// Exit codes: 0 success, 1 usage or validation error, 2 resource guard
// exceeded, 3 verification mismatch.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <fcbell/fcbell.hpp>

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitGuard = 2;
constexpr int kExitMismatch = 3;

using AnyExpression =
    std::variant<fcbell::BellExpression<std::int64_t>, fcbell::BellExpression<double>>;

struct GlobalOptions {
  std::string format = "table";
  std::string out_path;
  double guard = 1e8;
  std::uint64_t seed = 0;
};

bool all_integral(const std::vector<double>& values) {
  for (double v : values) {
    if (std::nearbyint(v) != v || std::abs(v) > 1e15) return false;
  }
  return true;
}

/// Parses the --f selector: fI | mabk | cosine:<delta> | g:<v1,v2,...> | file:<path>.
AnyExpression make_expression(const fcbell::Scenario& sc, const std::string& spec) {
  if (spec == "fI") {
    return fcbell::build_omega(sc);
  }
  if (spec == "mabk") {
    return fcbell::BellExpression<std::int64_t>(sc, fcbell::mabk_coefficients(sc.settings, sc.outcomes));
  }
  if (spec.rfind("cosine:", 0) == 0) {
    const double delta = std::stod(spec.substr(7));
    return fcbell::BellExpression<double>(sc, fcbell::cosine_coefficients(sc.settings, sc.outcomes, delta));
  }
  if (spec.rfind("g:", 0) == 0) {
    std::vector<double> g;
    std::stringstream stream(spec.substr(2));
    std::string item;
    while (std::getline(stream, item, ',')) g.push_back(std::stod(item));
    if (static_cast<int>(g.size()) != sc.settings) {
      throw fcbell::dimension_mismatch("g vector must have one entry per setting");
    }
    if (all_integral(g)) {
      std::vector<std::int64_t> gi(g.begin(), g.end());
      return fcbell::BellExpression<std::int64_t>(sc, fcbell::product_coefficients(gi, sc.outcomes));
    }
    return fcbell::BellExpression<double>(sc, fcbell::product_coefficients(g, sc.outcomes));
  }
  if (spec.rfind("file:", 0) == 0) {
    std::ifstream in(spec.substr(5));
    if (!in) throw fcbell::schema_error("cannot open expression file " + spec.substr(5));
    json doc = json::parse(in);
    auto dbl = fcbell::expression_from_json<double>(doc);
    std::vector<double> flat(dbl.coefficients().table().begin(), dbl.coefficients().table().end());
    if (all_integral(flat)) return fcbell::expression_from_json<std::int64_t>(doc);
    return dbl;
  }
  throw fcbell::precondition_error("unknown coefficient selector \"" + spec +
                                   "\" (expected fI, mabk, cosine:<d>, g:<...> or file:<path>)");
}

const fcbell::Scenario& scenario_of(const AnyExpression& expr) {
  return std::visit([](const auto& e) -> const fcbell::Scenario& { return e.scenario(); }, expr);
}

bool is_identity_expression(const AnyExpression& expr) {
  return std::visit([](const auto& e) { return fcbell::has_identity_coefficients(e.coefficients()); },
                    expr);
}

bool is_product_expression(const AnyExpression& expr) {
  return std::visit([](const auto& e) { return e.coefficients().is_product_form(); }, expr);
}

std::vector<double> product_weights_as_double(const AnyExpression& expr) {
  return std::visit(
      [](const auto& e) {
        auto g = e.coefficients().product_weights();
        return std::vector<double>(g.begin(), g.end());
      },
      expr);
}

std::string format_double(double v) {
  std::ostringstream out;
  out.precision(6);
  out << std::fixed << v;
  return out.str();
}

std::string format_value(const json& v) {
  if (v.is_number_float()) return format_double(v.get<double>());
  return v.dump();
}

void write_output(const GlobalOptions& global, const json& doc, const std::string& rendered) {
  if (global.format == "json") {
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << rendered;
  }
  if (!global.out_path.empty()) {
    std::ofstream out(global.out_path);
    if (!out) throw fcbell::error("cannot open output path " + global.out_path);
    out << doc.dump(2) << "\n";
  }
}

// ---------------------------------------------------------------------------
// bounds

struct BoundsSelection {
  bool local = false;
  bool svetlichny = false;
  int g_groups = 0;  // 0 = off
  bool diew = false;
  bool tsirelson = false;
  bool all = false;
};

int run_bounds(const fcbell::Scenario& sc, const AnyExpression& expr, BoundsSelection sel,
               const GlobalOptions& global) {
  if (sel.all) {
    sel.local = true;
    sel.svetlichny = true;
    sel.diew = true;
    sel.tsirelson = true;
  }
  const fcbell::EnumerationOptions enum_options{global.guard};
  json rows = json::array();

  auto add_report = [&rows](const auto& report) { rows.push_back(fcbell::bound_report_to_json(report)); };
  auto add_value = [&rows](const fcbell::BoundValue& value) { rows.push_back(fcbell::bound_value_to_json(value)); };

  if (sel.local) {
    std::visit([&](const auto& e) { add_report(fcbell::local_bound(e, enum_options)); }, expr);
  }
  if (sel.svetlichny && sc.parties >= 3) {
    std::visit([&](const auto& e) { add_report(fcbell::svetlichny_bound(e, enum_options)); }, expr);
    // Closed form from the enumerated bipartite local bound, for comparison.
    const fcbell::Scenario bipartite(2, sc.settings, sc.outcomes);
    std::visit(
        [&](const auto& e) {
          auto sub = fcbell::BellExpression(bipartite, e.coefficients());
          const auto beta2 = fcbell::local_bound(sub, enum_options).value;
          add_value({fcbell::BoundKind::svetlichny,
                     static_cast<double>(fcbell::svetlichny_bound_closed(sc, beta2)),
                     fcbell::BoundMethod::closed_form});
        },
        expr);
  }
  if (sel.g_groups > 0) {
    std::visit([&](const auto& e) { add_report(fcbell::g_group_bound(e, sel.g_groups, enum_options)); },
               expr);
  }
  if (sel.diew && sc.outcomes == 2 && sc.parties >= 3 && is_product_expression(expr)) {
    add_value({fcbell::BoundKind::biseparable,
               fcbell::diew_bound_binary(sc.parties, sc.settings, product_weights_as_double(expr)),
               fcbell::BoundMethod::closed_form});
  } else if (sel.diew && !sel.all) {
    throw fcbell::precondition_error(
        "the biseparable closed form needs binary outcomes, a product-form f and n >= 3");
  }
  if (sel.tsirelson && sc.outcomes == 2 && is_identity_expression(expr)) {
    add_value({fcbell::BoundKind::tsirelson, fcbell::tsirelson_bound_binary(sc.parties, sc.settings),
               fcbell::BoundMethod::closed_form});
  } else if (sel.tsirelson && !sel.all) {
    throw fcbell::precondition_error("the Tsirelson closed form is built in for fI with k = 2 only");
  }

  json doc = {{"scenario", {{"n", sc.parties}, {"m", sc.settings}, {"k", sc.outcomes}}},
              {"bounds", rows}};
  std::ostringstream rendered;
  if (global.format == "csv") {
    rendered << "bound_kind,method,value\n";
    rendered.precision(17);
    for (const auto& row : rows) {
      rendered << row.at("kind").get<std::string>() << "," << row.at("method").get<std::string>() << ",";
      if (row.at("value").is_number_float()) {
        rendered << row.at("value").get<double>();
      } else {
        rendered << row.at("value").dump();
      }
      rendered << "\n";
    }
  } else {
    rendered << "bound         method                 value\n";
    for (const auto& row : rows) {
      const auto kind = row.at("kind").get<std::string>();
      const auto method = row.at("method").get<std::string>();
      rendered << kind << std::string(14 - kind.size(), ' ') << method
               << std::string(23 - method.size(), ' ') << format_value(row.at("value")) << "\n";
    }
  }
  write_output(global, doc, rendered.str());
  return kExitOk;
}

// ---------------------------------------------------------------------------
// reduce-check

int run_reduce_check(const std::string& family, int parties, int settings, int outcomes,
                     const GlobalOptions& global) {
  bool match = false;
  if (family == "bkp") {
    if (parties != 2) throw fcbell::precondition_error("the chained-form reduction requires n = 2");
    const auto omega = fcbell::build_omega(fcbell::Scenario(2, settings, outcomes));
    const auto relabelled = fcbell::reduce_to_bkp(omega);
    match = relabelled == fcbell::bkp_tensor(settings, outcomes);
  } else if (family == "svet-cglmp") {
    if (settings != 2) throw fcbell::precondition_error("the Svetlichny-CGLMP reduction requires m = 2");
    const auto omega = fcbell::build_omega(fcbell::Scenario(parties, 2, outcomes));
    const auto relabelled = fcbell::reduce_to_svetlichny_cglmp(omega);
    match = relabelled == fcbell::svetlichny_cglmp_tensor(parties, outcomes);
  } else {
    throw fcbell::precondition_error("unknown reduction family \"" + family + "\"");
  }
  json doc = {{"family", family},
              {"scenario", {{"n", parties}, {"m", settings}, {"k", outcomes}}},
              {"match", match}};
  write_output(global, doc, std::string(match ? "match" : "MISMATCH") + "\n");
  return match ? kExitOk : kExitMismatch;
}

// ---------------------------------------------------------------------------
// ghz-opt

int run_ghz_opt(const fcbell::Scenario& sc, const AnyExpression& expr, int restarts, int max_sweeps,
                const GlobalOptions& global, const std::string& angles_out) {
  if (sc.outcomes != 2) throw fcbell::precondition_error("GHZ optimization requires k = 2");
  if (!is_product_expression(expr)) {
    throw fcbell::precondition_error("GHZ optimization requires a product-form f");
  }
  fcbell::OptimizeOptions options;
  options.seed = global.seed;
  options.restarts = restarts;
  options.max_sweeps = max_sweeps;
  const auto report = std::visit([&](const auto& e) { return fcbell::optimize_phases(e, options); }, expr);

  json phi = fcbell::angles_to_json(report.angles);
  // The achieved value upper-bounds the quantum minimum.
  json doc = {{"value", report.value},
              {"angles", phi},
              {"report", fcbell::bound_value_to_json({fcbell::BoundKind::tsirelson, report.value,
                                                      fcbell::BoundMethod::quantum_achieved_upper})}};
  std::ostringstream table;
  table << "best value   " << format_double(report.value) << "\n";
  if (!std::isnan(report.target_bound)) {
    doc["target_bound"] = report.target_bound;
    doc["gap"] = report.gap;
    table << "target bound " << format_double(report.target_bound) << "\n"
          << "gap          " << format_double(report.gap) << "\n";
  }
  table << "phi\n";
  for (int i = 0; i < report.angles.parties; ++i) {
    table << " ";
    for (int s = 0; s < report.angles.settings; ++s) table << " " << format_double(report.angles.at(i, s));
    table << "\n";
  }
  if (!angles_out.empty()) {
    std::ofstream out(angles_out);
    if (!out) throw fcbell::error("cannot open output path " + angles_out);
    out << phi.dump(2) << "\n";
  }
  write_output(global, doc, table.str());
  return kExitOk;
}

// ---------------------------------------------------------------------------
// classify

int run_classify(const fcbell::Scenario& sc, const AnyExpression& expr, const std::string& path,
                 const GlobalOptions& global) {
  std::ifstream in(path);
  if (!in) throw fcbell::schema_error("cannot open behavior file " + path);
  json doc = json::parse(in);
  const fcbell::Behavior behavior = fcbell::ingest(doc);
  if (behavior.scenario() != sc) {
    throw fcbell::dimension_mismatch("behavior file scenario does not match the requested scenario");
  }

  const fcbell::EnumerationOptions enum_options{global.guard};
  std::vector<fcbell::BoundValue> bounds;
  std::visit([&](const auto& e) { bounds.push_back(as_bound_value(fcbell::local_bound(e, enum_options))); },
             expr);
  if (sc.parties >= 3) {
    std::visit(
        [&](const auto& e) { bounds.push_back(as_bound_value(fcbell::svetlichny_bound(e, enum_options))); },
        expr);
  }
  if (sc.outcomes == 2 && sc.parties >= 3 && is_product_expression(expr)) {
    bounds.push_back({fcbell::BoundKind::biseparable,
                      fcbell::diew_bound_binary(sc.parties, sc.settings, product_weights_as_double(expr)),
                      fcbell::BoundMethod::closed_form});
  }
  if (sc.outcomes == 2 && is_identity_expression(expr)) {
    bounds.push_back({fcbell::BoundKind::tsirelson, fcbell::tsirelson_bound_binary(sc.parties, sc.settings),
                      fcbell::BoundMethod::closed_form});
  }

  const auto report = std::visit([&](const auto& e) { return fcbell::classify(e, behavior, bounds); }, expr);
  json out = fcbell::classification_to_json(report);
  std::ostringstream rendered;
  if (global.format == "csv") {
    rendered.precision(17);
    rendered << "kind,bound,method,violated,margin\n";
    for (const auto& v : report.verdicts) {
      rendered << to_string(v.kind) << "," << v.bound << "," << to_string(v.method) << ","
               << (v.violated ? "true" : "false") << "," << v.margin << "\n";
    }
  } else {
    rendered << "value " << format_double(report.value) << "\n";
    for (const auto& v : report.verdicts) {
      rendered << (v.violated ? "violates " : "satisfies ") << to_string(v.kind) << " (bound "
               << format_double(v.bound) << ", method " << to_string(v.method) << ", margin "
               << format_double(v.margin) << ")\n";
    }
  }
  write_output(global, out, rendered.str());
  return kExitOk;
}

// ---------------------------------------------------------------------------
// table sweep

struct Range {
  int lo = 0;
  int hi = -1;  // empty when hi < lo
};

Range parse_range(const std::string& text) {
  Range range;
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    range.lo = std::stoi(text);
    range.hi = range.lo;
  } else {
    range.lo = std::stoi(text.substr(0, colon));
    range.hi = std::stoi(text.substr(colon + 1));
  }
  return range;
}

int run_table(const std::string& n_range, const std::string& m_range, const std::string& k_range,
              const std::string& kinds_csv, const std::string& f_spec, bool exact,
              bool skip_infeasible, const GlobalOptions& global) {
  std::vector<std::string> kinds;
  {
    std::stringstream stream(kinds_csv);
    std::string item;
    while (std::getline(stream, item, ',')) kinds.push_back(item);
  }
  for (const auto& kind : kinds) {
    if (kind != "svetlichny" && kind != "diew" && kind != "tsirelson" && kind != "local") {
      throw fcbell::precondition_error("unknown bound kind \"" + kind + "\"");
    }
  }
  const Range nr = parse_range(n_range);
  const Range mr = parse_range(m_range);
  const Range kr = parse_range(k_range);

  std::ostringstream csv;
  csv << "n,m,k,bound_kind,method,value\n";
  json rows = json::array();
  auto emit = [&](int n, int m, int k, const std::string& kind, const std::string& method,
                  const json& value) {
    csv << n << "," << m << "," << k << "," << kind << "," << method << ",";
    if (value.is_string()) {
      csv << value.get<std::string>();
    } else if (value.is_number_integer()) {
      csv << value.dump();
    } else {
      csv.precision(17);
      csv << value.get<double>();
    }
    csv << "\n";
    rows.push_back({{"n", n}, {"m", m}, {"k", k}, {"bound_kind", kind}, {"method", method}, {"value", value}});
  };

  const fcbell::EnumerationOptions enum_options{global.guard};
  for (int n = nr.lo; n <= nr.hi; ++n) {
    for (int m = mr.lo; m <= mr.hi; ++m) {
      for (int k = kr.lo; k <= kr.hi; ++k) {
        const fcbell::Scenario sc(n, m, k);
        const AnyExpression expr = make_expression(sc, f_spec);
        for (const auto& kind : kinds) {
          if (kind == "svetlichny" && n >= 3) {
            const fcbell::Scenario bipartite(2, m, k);
            std::visit(
                [&](const auto& e) {
                  auto sub = fcbell::BellExpression(bipartite, e.coefficients());
                  const auto beta2 = fcbell::local_bound(sub, enum_options).value;
                  emit(n, m, k, kind, "closed-form",
                       json(fcbell::svetlichny_bound_closed(sc, beta2)));
                },
                expr);
            if (exact) {
              try {
                std::visit(
                    [&](const auto& e) {
                      emit(n, m, k, kind, "combinatorial-exact",
                           json(fcbell::svetlichny_bound(e, enum_options).value));
                    },
                    expr);
              } catch (const fcbell::guard_exceeded&) {
                if (!skip_infeasible) throw;
                emit(n, m, k, kind, "combinatorial-exact", json("skipped"));
              }
            }
          } else if (kind == "diew" && k == 2 && n >= 3 && is_product_expression(expr)) {
            emit(n, m, k, kind, "closed-form",
                 json(fcbell::diew_bound_binary(n, m, product_weights_as_double(expr))));
          } else if (kind == "tsirelson" && k == 2 && is_identity_expression(expr)) {
            emit(n, m, k, kind, "closed-form", json(fcbell::tsirelson_bound_binary(n, m)));
          } else if (kind == "local" && exact) {
            try {
              std::visit(
                  [&](const auto& e) {
                    emit(n, m, k, kind, "combinatorial-exact",
                         json(fcbell::local_bound(e, enum_options).value));
                  },
                  expr);
            } catch (const fcbell::guard_exceeded&) {
              if (!skip_infeasible) throw;
              emit(n, m, k, kind, "combinatorial-exact", json("skipped"));
            }
          }
        }
      }
    }
  }

  json doc = {{"rows", rows}};
  if (global.format == "json") {
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << csv.str();
  }
  if (!global.out_path.empty()) {
    std::ofstream out(global.out_path);
    if (!out) throw fcbell::error("cannot open output path " + global.out_path);
    out << csv.str();
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// build

int run_build(const AnyExpression& expr, const GlobalOptions& global) {
  const json doc = std::visit([](const auto& e) { return fcbell::expression_to_json(e); }, expr);
  std::cout << doc.dump(2) << "\n";
  if (!global.out_path.empty()) {
    std::ofstream out(global.out_path);
    if (!out) throw fcbell::error("cannot open output path " + global.out_path);
    out << doc.dump(2) << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symmetric full-correlation Bell expressions: bounds, reductions, GHZ models"};
  app.require_subcommand(1);

  GlobalOptions global;
  app.add_option("--format", global.format, "Output format")->check(CLI::IsMember({"table", "json", "csv"}));
  app.add_option("--out", global.out_path, "Write machine-readable output to this path");
  app.add_option("--guard", global.guard, "Enumeration guard in coefficient evaluations")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", global.seed, "Random seed");

  int n = 2, m = 2, k = 2;
  std::string f_spec = "fI";

  auto* bounds = app.add_subcommand("bounds", "Compute bounds of an expression");
  bounds->fallthrough();
  BoundsSelection sel;
  bounds->add_option("-n", n, "Parties")->required();
  bounds->add_option("-m", m, "Settings per party")->required();
  bounds->add_option("-k", k, "Outcomes per setting")->required();
  bounds->add_option("--f", f_spec, "Coefficient selector: fI | mabk | cosine:<d> | g:<...> | file:<path>");
  bounds->add_flag("--local", sel.local, "Exact local bound");
  bounds->add_flag("--svetlichny", sel.svetlichny, "Exact and closed-form Svetlichny bounds");
  bounds->add_option("--g-group", sel.g_groups, "Exact bound for this many groups");
  bounds->add_flag("--diew", sel.diew, "Closed-form biseparable bound (k = 2, product f)");
  bounds->add_flag("--tsirelson", sel.tsirelson, "Closed-form Tsirelson bound (k = 2, fI)");
  bounds->add_flag("--all", sel.all, "All applicable bounds");

  auto* reduce = app.add_subcommand("reduce-check", "Verify a relabelling reduction");
  reduce->fallthrough();
  std::string family;
  reduce->add_option("family", family, "bkp | svet-cglmp")->required();
  reduce->add_option("-n", n, "Parties (svet-cglmp; bkp fixes n = 2)");
  reduce->add_option("-m", m, "Settings (bkp; svet-cglmp fixes m = 2)");
  reduce->add_option("-k", k, "Outcomes");

  auto* ghz = app.add_subcommand("ghz-opt", "Optimize GHZ phases against an expression");
  ghz->fallthrough();
  int restarts = 20;
  int max_sweeps = 500;
  std::string angles_out;
  ghz->add_option("-n", n, "Parties")->required();
  ghz->add_option("-m", m, "Settings per party")->required();
  ghz->add_option("-k", k, "Outcomes (must be 2)");
  ghz->add_option("--f", f_spec, "Coefficient selector");
  ghz->add_option("--restarts", restarts, "Random restarts; 0 evaluates one random point");
  ghz->add_option("--max-iters", max_sweeps, "Coordinate sweeps per restart");
  ghz->add_option("--angles-out", angles_out, "Write the best angle matrix to this path");

  auto* classify_cmd = app.add_subcommand("classify", "Evaluate a behavior file against bounds");
  classify_cmd->fallthrough();
  std::string behavior_path;
  classify_cmd->add_option("-n", n, "Parties")->required();
  classify_cmd->add_option("-m", m, "Settings per party")->required();
  classify_cmd->add_option("-k", k, "Outcomes per setting")->required();
  classify_cmd->add_option("--f", f_spec, "Coefficient selector");
  classify_cmd->add_option("--behavior", behavior_path, "Behavior JSON file")->required();

  auto* table_cmd = app.add_subcommand("table", "CSV sweep of bounds over a scenario grid");
  table_cmd->fallthrough();
  std::string n_range = "2:2", m_range = "2:2", k_range = "2:2";
  std::string kinds = "svetlichny,diew,tsirelson";
  bool exact = false;
  bool skip_infeasible = false;
  table_cmd->add_option("--n-range", n_range, "Parties range lo:hi");
  table_cmd->add_option("--m-range", m_range, "Settings range lo:hi");
  table_cmd->add_option("--k-range", k_range, "Outcomes range lo:hi");
  table_cmd->add_option("--kinds", kinds, "Comma list of svetlichny,diew,tsirelson,local");
  table_cmd->add_option("--f", f_spec, "Coefficient selector");
  table_cmd->add_flag("--exact", exact, "Add enumerated cells");
  table_cmd->add_flag("--skip-infeasible", skip_infeasible, "Mark guarded-out exact cells as skipped");

  auto* build_cmd = app.add_subcommand("build", "Emit the expression document");
  build_cmd->fallthrough();
  build_cmd->add_option("-n", n, "Parties")->required();
  build_cmd->add_option("-m", m, "Settings per party")->required();
  build_cmd->add_option("-k", k, "Outcomes per setting")->required();
  build_cmd->add_option("--f", f_spec, "Coefficient selector");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (reduce->parsed()) {
      if (!reduce->count("-n")) n = 2;
      if (!reduce->count("-m")) m = 2;
      return run_reduce_check(family, n, m, k, global);
    }
    if (table_cmd->parsed()) {
      return run_table(n_range, m_range, k_range, kinds, f_spec, exact, skip_infeasible, global);
    }
    const fcbell::Scenario sc(n, m, k);
    const AnyExpression expr = make_expression(sc, f_spec);
    if (bounds->parsed()) return run_bounds(sc, expr, sel, global);
    if (ghz->parsed()) return run_ghz_opt(sc, expr, restarts, max_sweeps, global, angles_out);
    if (classify_cmd->parsed()) return run_classify(sc, expr, behavior_path, global);
    if (build_cmd->parsed()) return run_build(expr, global);
    std::cerr << "no subcommand\n";
    return kExitUsage;
  } catch (const fcbell::guard_exceeded& e) {
    std::cerr << "guard exceeded: " << e.what() << "\n";
    return kExitGuard;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
