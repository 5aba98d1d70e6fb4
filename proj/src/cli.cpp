#include "blendkit/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "blendkit/blend_spec.hpp"
#include "blendkit/blended_surface.hpp"
#include "blendkit/expression.hpp"
#include "blendkit/format.hpp"
#include "blendkit/piecewise.hpp"

namespace blendkit {

namespace {

// bad flag values are argument errors (exit 2), unlike computation failures
struct ArgumentError : Error {
  using Error::Error;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

int parse_int(const std::string& token, const std::string& what) {
  char* end = nullptr;
  const long v = std::strtol(token.c_str(), &end, 10);
  if (token.empty() || end != token.c_str() + token.size())
    throw ArgumentError("invalid " + what + " '" + token + "'");
  return static_cast<int>(v);
}

double parse_double(const std::string& token, const std::string& what) {
  char* end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  if (token.empty() || end != token.c_str() + token.size())
    throw ArgumentError("invalid " + what + " '" + token + "'");
  return v;
}

std::vector<int> parse_int_list(const std::string& text, const std::string& what) {
  std::vector<int> out;
  for (const std::string& tok : split(text, ',')) out.push_back(parse_int(tok, what));
  return out;
}

Rect parse_domain(const std::string& text) {
  const std::vector<std::string> parts = split(text, ',');
  if (parts.size() != 4) throw ArgumentError("--domain needs four numbers a,b,c,d");
  return {parse_double(parts[0], "domain bound"), parse_double(parts[1], "domain bound"),
          parse_double(parts[2], "domain bound"), parse_double(parts[3], "domain bound")};
}

std::pair<double, double> parse_point(const std::string& text) {
  const std::vector<std::string> parts = split(text, ',');
  if (parts.size() != 2) throw ArgumentError("--at needs two numbers u,v");
  return {parse_double(parts[0], "coordinate"), parse_double(parts[1], "coordinate")};
}

std::vector<int> parse_ks(const std::string& text) {
  const std::size_t dots = text.find("..");
  std::vector<int> ks;
  if (dots != std::string::npos) {
    const int lo = parse_int(text.substr(0, dots), "cell count");
    const int hi = parse_int(text.substr(dots + 2), "cell count");
    if (lo > hi) throw ArgumentError("--ks range must be ascending");
    for (int k = lo; k <= hi; ++k) ks.push_back(k);
  } else {
    ks = parse_int_list(text, "cell count");
  }
  for (int k : ks)
    if (k < 1) throw ArgumentError("cell counts must be at least 1");
  return ks;
}

std::string seq_to_string(const std::vector<int>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + "]";
}

void require_ascending(const std::vector<int>& v, const std::string& name) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] < 0) throw ArgumentError(name + " entries must be nonnegative");
    if (i && v[i] <= v[i - 1]) throw ArgumentError(name + " must be strictly ascending: " + seq_to_string(v));
  }
  if (v.empty()) throw ArgumentError(name + " must be nonempty");
}

// non-divisible sequences are repaired via degree elevation unless --strict
BlendSpec make_spec(std::vector<int> m, std::vector<int> n, bool strict, std::ostream& err) {
  require_ascending(m, "--m");
  require_ascending(n, "--n");
  if (m.size() != n.size()) throw ArgumentError("--m and --n must have the same length");
  for (auto* seq : {&m, &n}) {
    if (is_divisibility_chain(*seq)) continue;
    const char* name = (seq == &m) ? "m" : "n";
    if (strict)
      throw ArgumentError(std::string(name) + " = " + seq_to_string(*seq) +
                          " is not a divisibility chain");
    std::vector<int> fixed = *seq;
    if (fixed[0] == 0) {
      std::vector<int> tail(fixed.begin() + 1, fixed.end());
      tail = elevate_to_divisible(tail);
      fixed.assign(1, 0);
      fixed.insert(fixed.end(), tail.begin(), tail.end());
    } else {
      fixed = elevate_to_divisible(fixed);
    }
    err << "warning: " << name << " = " << seq_to_string(*seq)
        << " is not a divisibility chain; elevated to " << seq_to_string(fixed) << "\n";
    *seq = fixed;
  }
  return BlendSpec(std::move(m), std::move(n));
}

SampleFn expression_fn(const std::string& text) {
  const Expression expr = parse_expression(text);
  return [expr](double x, double y) { return expr.eval(x, y); };
}

void run_dim(const std::vector<int>& m, const std::vector<int>& n, std::ostream& out) {
  out << "dim=" << dimension(m, n) << "\n";
  out << "lower_set=" << lower_set(m, n).points().size() << "\n";
}

void run_order(const std::vector<int>& m, const std::vector<int>& n, std::ostream& out) {
  out << "p=" << predicted_order(m, n) << "\n";
}

void run_serendipity(std::ostream& out) {
  const std::vector<std::vector<int>> specs = {{1, 2}, {1, 3}, {1, 2, 4}, {2, 4}};
  for (const std::vector<int>& s : specs)
    out << "m=" << seq_to_string(s) << " n=" << seq_to_string(s) << " dim=" << dimension(s, s)
        << " order=" << predicted_order(s, s) << "\n";
}

void run_grid(const BlendSpec& spec, const std::string& format, std::ostream& out) {
  const QuasiUniformGrid grid = quasi_uniform_grid(spec);
  if (format == "csv") {
    out << "i,j\n";
    for (const auto& [i, j] : grid.points()) out << i << "," << j << "\n";
    return;
  }
  nlohmann::ordered_json doc;
  doc["m"] = spec.m();
  doc["n"] = spec.n();
  nlohmann::ordered_json pts = nlohmann::ordered_json::array();
  for (const auto& [i, j] : grid.points()) pts.push_back({i, j});
  doc["points"] = pts;
  doc["alpha"] = grid.alpha();
  doc["beta"] = grid.beta();
  doc["inverse_alpha"] = grid.inverse_alpha();
  doc["inverse_beta"] = grid.inverse_beta();
  out << doc.dump(2) << "\n";
}

nlohmann::ordered_json surface_to_json(const BlendedSurface& surface) {
  nlohmann::ordered_json doc;
  doc["spec"] = {{"m", surface.spec().m()}, {"n", surface.spec().n()}};
  doc["domain"] = {surface.rect().a, surface.rect().b, surface.rect().c, surface.rect().d};
  nlohmann::ordered_json coeffs = nlohmann::ordered_json::array();
  for (const auto& [i, j] : surface.grid().points())
    coeffs.push_back(nlohmann::ordered_json::array({i, j, surface.coeff(i, j)}));
  doc["coeffs"] = coeffs;
  return doc;
}

void run_fit(const BlendSpec& spec, const Rect& rect, const SampleFn& f, const std::string& out_path,
             std::ostream& out) {
  const BlendedSurface surface = fit(spec, rect, f);
  if (out_path.empty()) {
    surface.write_control_net_csv(out);
    return;
  }
  std::ofstream file(out_path);
  if (!file) throw Error("cannot open '" + out_path + "' for writing");
  if (out_path.size() >= 5 && out_path.substr(out_path.size() - 5) == ".json")
    file << surface_to_json(surface).dump(2) << "\n";
  else
    surface.write_control_net_csv(file);
  if (!file.good()) throw Error("failed writing '" + out_path + "'");
}

void run_eval(const std::string& surface_path, double u, double v, std::ostream& out) {
  std::ifstream file(surface_path);
  if (!file) throw Error("cannot open '" + surface_path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(file);
  } catch (const nlohmann::json::exception& e) {
    throw Error("invalid surface file '" + surface_path + "': " + e.what());
  }
  try {
    const std::vector<int> m = doc.at("spec").at("m").get<std::vector<int>>();
    const std::vector<int> n = doc.at("spec").at("n").get<std::vector<int>>();
    const std::vector<double> dom = doc.at("domain").get<std::vector<double>>();
    if (dom.size() != 4) throw Error("domain must have four entries");
    std::vector<std::tuple<int, int, double>> entries;
    for (const auto& row : doc.at("coeffs")) {
      if (!row.is_array() || row.size() != 3) throw Error("coeff rows must be [i,j,b]");
      entries.emplace_back(row[0].get<int>(), row[1].get<int>(), row[2].get<double>());
    }
    const BlendedSurface surface =
        from_coeffs(BlendSpec(m, n), {dom[0], dom[1], dom[2], dom[3]}, entries);
    out << format_sig17(surface.evaluate(u, v)) << "\n";
  } catch (const nlohmann::json::exception& e) {
    throw Error("invalid surface file '" + surface_path + "': " + e.what());
  }
}

void run_converge(const BlendSpec& spec, const Rect& rect, const SampleFn& f,
                  const std::vector<int>& ks, int tail, std::ostream& out) {
  const ConvergenceTable table = convergence_study(spec, rect, f, ks, 25, tail);
  write_convergence_csv(table, out);
  switch (table.status) {
    case OrderStatus::fitted:
      out << "order=" << format_sig17(table.fitted_order) << "\n";
      break;
    case OrderStatus::exact:
      out << "order=exact\n";
      break;
    case OrderStatus::insufficient_data:
      out << "order=nan (insufficient data)\n";
      break;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"discretely blended Bernstein-Bezier surface toolkit"};
  app.require_subcommand(1);

  std::string m_text, n_text, domain_text, fn_text, out_path, format = "json";
  std::string surface_path, at_text, ks_text;
  int tail = 0;
  bool strict = false;

  CLI::App* dim = app.add_subcommand("dim", "print dimension and lower-set size");
  dim->add_option("--m", m_text, "degree sequence, comma separated")->required();
  dim->add_option("--n", n_text, "degree sequence, comma separated")->required();

  CLI::App* grid = app.add_subcommand("grid", "emit the quasi-uniform grid and index maps");
  grid->add_option("--m", m_text)->required();
  grid->add_option("--n", n_text)->required();
  grid->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  grid->add_flag("--strict", strict, "reject non-divisible sequences instead of repairing");

  CLI::App* fit_cmd = app.add_subcommand("fit", "fit a surface and emit its control net");
  fit_cmd->add_option("--m", m_text)->required();
  fit_cmd->add_option("--n", n_text)->required();
  fit_cmd->add_option("--domain", domain_text, "a,b,c,d")->required();
  fit_cmd->add_option("--fn", fn_text, "expression in x and y")->required();
  fit_cmd->add_option("--out", out_path, "output file (.json stores the surface, else CSV)");
  fit_cmd->add_flag("--strict", strict);

  CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate a stored surface");
  eval_cmd->add_option("--surface", surface_path, "surface JSON written by fit --out")->required();
  eval_cmd->add_option("--at", at_text, "u,v")->required();

  CLI::App* converge = app.add_subcommand("converge", "piecewise convergence study");
  converge->add_option("--m", m_text)->required();
  converge->add_option("--n", n_text)->required();
  converge->add_option("--domain", domain_text, "a,b,c,d")->required();
  converge->add_option("--fn", fn_text, "expression in x and y")->required();
  converge->add_option("--ks", ks_text, "cell counts, e.g. 1..16 or 4,8,16")->required();
  converge->add_option("--tail", tail, "fit the order on the last N rows only")
      ->check(CLI::PositiveNumber);
  converge->add_flag("--strict", strict);

  CLI::App* serendipity = app.add_subcommand("serendipity", "dimension and order table");
  (void)serendipity;

  CLI::App* order = app.add_subcommand("order", "predicted approximation order");
  order->add_option("--m", m_text)->required();
  order->add_option("--n", n_text)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
    if (dim->parsed()) {
      const std::vector<int> m = parse_int_list(m_text, "degree");
      const std::vector<int> n = parse_int_list(n_text, "degree");
      require_ascending(m, "--m");
      require_ascending(n, "--n");
      run_dim(m, n, out);
    } else if (order->parsed()) {
      const std::vector<int> m = parse_int_list(m_text, "degree");
      const std::vector<int> n = parse_int_list(n_text, "degree");
      require_ascending(m, "--m");
      require_ascending(n, "--n");
      run_order(m, n, out);
    } else if (serendipity->parsed()) {
      run_serendipity(out);
    } else if (grid->parsed()) {
      run_grid(make_spec(parse_int_list(m_text, "degree"), parse_int_list(n_text, "degree"), strict, err),
               format, out);
    } else if (fit_cmd->parsed()) {
      run_fit(make_spec(parse_int_list(m_text, "degree"), parse_int_list(n_text, "degree"), strict, err),
              parse_domain(domain_text), expression_fn(fn_text), out_path, out);
    } else if (eval_cmd->parsed()) {
      const auto [u, v] = parse_point(at_text);
      run_eval(surface_path, u, v, out);
    } else if (converge->parsed()) {
      run_converge(make_spec(parse_int_list(m_text, "degree"), parse_int_list(n_text, "degree"), strict, err),
                   parse_domain(domain_text), expression_fn(fn_text), parse_ks(ks_text), tail, out);
    }
    return 0;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const SyntaxError& e) {
    err << "error: invalid expression: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace blendkit
