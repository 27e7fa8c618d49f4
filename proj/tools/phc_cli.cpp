// phc: command-line front end over the C API.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "phc/phc.h"

namespace {

using nlohmann::json;

enum Exit { kOk = 0, kVerifyFailed = 1, kUsage = 2, kNumerical = 3 };

struct Failure {
  int exit_code;
  std::string message;
};

struct ShapeDeleter {
  void operator()(phc_shape* s) const { phc_shape_free(s); }
};
struct QuadDeleter {
  void operator()(phc_quad* q) const { phc_quad_free(q); }
};
struct ReportDeleter {
  void operator()(phc_verify_report* r) const { phc_verify_report_free(r); }
};
using ShapePtr = std::unique_ptr<phc_shape, ShapeDeleter>;
using QuadPtr = std::unique_ptr<phc_quad, QuadDeleter>;

bool is_usage(phc_status s) {
  return s == PHC_ERR_PARSE || s == PHC_ERR_INVALID_SHAPE || s == PHC_ERR_DOMAIN ||
         s == PHC_ERR_DIMENSION_MISMATCH || s == PHC_ERR_NULL;
}

void check(phc_status s, const char* what) {
  if (s == PHC_OK) return;
  std::string msg = std::string(what) + ": " + phc_status_string(s);
  const std::string detail = phc_last_error();
  if (!detail.empty()) msg += " (" + detail + ")";
  throw Failure{is_usage(s) ? kUsage : kNumerical, msg};
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// Rows of named columns, emitted as CSV or as JSON with a meta block.
class Table {
 public:
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add(std::vector<json> row) { rows_.push_back(std::move(row)); }

  std::string csv() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < columns_.size(); ++i)
      os << (i ? "," : "") << columns_[i];
    os << "\r\n";
    for (const auto& row : rows_) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        os << (i ? "," : "");
        const json& v = row[i];
        if (v.is_number_float()) os << fmt(v.get<double>());
        else if (v.is_null()) os << "nan";
        else if (v.is_string()) os << csv_field(v.get<std::string>());
        else os << v.dump();
      }
      os << "\r\n";
    }
    return os.str();
  }

  std::string json_text(const json& meta) const {
    json rows = json::array();
    for (const auto& row : rows_) {
      json obj = json::object();
      for (std::size_t i = 0; i < row.size(); ++i) obj[columns_[i]] = row[i];
      rows.push_back(obj);
    }
    return json{{"meta", meta}, {"rows", rows}}.dump(2) + "\n";
  }

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<json>> rows_;
};

struct Options {
  std::string shape_name;
  std::string shape_file;
  std::optional<double> tol;
  std::uint64_t seed = 20240601;
  std::string format = "csv";
  std::string out;
};

ShapePtr load_shape(const Options& o, const char* fallback = nullptr) {
  phc_shape* s = nullptr;
  if (!o.shape_file.empty()) {
    std::ifstream in(o.shape_file);
    if (!in) throw Failure{kUsage, "cannot read shape file " + o.shape_file};
    std::stringstream buf;
    buf << in.rdbuf();
    check(phc_shape_from_json(buf.str().c_str(), &s), "shape file");
  } else {
    const std::string name = o.shape_name.empty() && fallback ? fallback : o.shape_name;
    if (name.empty()) throw Failure{kUsage, "one of --shape or --shape-file is required"};
    check(phc_shape_named(name.c_str(), &s), "shape");
  }
  return ShapePtr(s);
}

QuadPtr load_quad(const Options& o) {
  phc_quad* q = nullptr;
  check(phc_quad_new(&q), "quadrature settings");
  QuadPtr quad(q);
  if (o.tol) check(phc_quad_set_tolerance(q, *o.tol, *o.tol), "--tol");
  return quad;
}

std::string describe(const phc_shape* s) {
  char buf[256];
  check(phc_shape_describe(s, buf, sizeof buf), "describe");
  return buf;
}

json meta_for(const std::string& command, const Options& o, const phc_shape* s) {
  json m = {{"command", command}, {"version", phc_version()}, {"seed", o.seed}};
  if (s) m["shape"] = describe(s);
  if (o.tol) m["tol"] = *o.tol;
  return m;
}

void emit(const Table& table, const Options& o, const json& meta) {
  const std::string text = o.format == "json" ? table.json_text(meta) : table.csv();
  if (o.out.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw Failure{kUsage, "cannot open output file " + o.out};
  f << text;
  if (!f) throw Failure{kNumerical, "write failed for " + o.out};
}

void add_common(CLI::App* cmd, Options& o, bool with_shape = true) {
  if (with_shape) {
    auto* name = cmd->add_option("--shape", o.shape_name, "ball2|ball3|square|interval|triangle");
    auto* file = cmd->add_option("--shape-file", o.shape_file, "JSON shape file");
    name->excludes(file);
  }
  cmd->add_option("--tol", o.tol, "absolute and relative quadrature tolerance")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", o.seed, "seed for Monte Carlo estimates");
  cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", o.out, "output path (default stdout)");
}

std::vector<double> parse_vector(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Failure{kUsage, "bad number in --y: " + item};
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heat content of bounded sets under the Poisson kernel"};
  app.require_subcommand(1);
  Options o;

  int dim = 0;
  auto* constants = app.add_subcommand("constants", "kernel constants and shape geometry");
  add_common(constants, o);
  constants->add_option("--dim", dim, "dimension (instead of a shape)");

  std::string y_text;
  std::int64_t mc_n = 0;
  auto* cov = app.add_subcommand("covariance", "set covariance g(y)");
  add_common(cov, o);
  cov->add_option("--y", y_text, "comma-separated point")->required();
  cov->add_option("--mc-n", mc_n, "also print a Monte Carlo estimate with this many samples");

  double t = 0;
  auto* heat = app.add_subcommand("heat-content", "heat content H(t) and its decomposition");
  add_common(heat, o);
  heat->add_option("--t", t, "time")->required()->check(CLI::PositiveNumber);
  heat->add_option("--mc-n", mc_n, "also print a Monte Carlo estimate with this many samples");

  double t_min = std::ldexp(1.0, -16), t_max = std::ldexp(1.0, -4);
  int count = 13;
  auto* expansion = app.add_subcommand("expansion", "third-term constant and its extrapolation");
  add_common(expansion, o);
  expansion->add_option("--t-min", t_min)->check(CLI::PositiveNumber);
  expansion->add_option("--t-max", t_max)->check(CLI::PositiveNumber);
  expansion->add_option("--count", count)->check(CLI::Range(4, 1000));

  std::string target = "all";
  auto* verify = app.add_subcommand("verify", "reproduce the published constants");
  add_common(verify, o, false);
  verify->add_option("target", target, "ball2|ball3|square|interval|all")
      ->check(CLI::IsMember({"ball2", "ball3", "square", "interval", "all"}));

  auto* sweep = app.add_subcommand("sweep", "decomposition on a geometric t grid");
  add_common(sweep, o);
  sweep->add_option("--t-min", t_min)->check(CLI::PositiveNumber);
  sweep->add_option("--t-max", t_max)->check(CLI::PositiveNumber);
  sweep->add_option("--count", count)->check(CLI::Range(2, 100000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (constants->parsed()) {
      Table table({"quantity", "value"});
      json meta;
      if (dim > 0) {
        meta = meta_for("constants", o, nullptr);
      } else {
        ShapePtr s = load_shape(o);
        phc_geometry g;
        check(phc_shape_geometry(s.get(), &g), "geometry");
        dim = g.dim;
        meta = meta_for("constants", o, s.get());
        table.add({"volume", g.volume});
        table.add({"perimeter", g.perimeter});
        table.add({"support_radius", g.support_radius});
      }
      phc_constants c;
      check(phc_constants_for_dim(dim, &c), "constants");
      table.add({"dim", static_cast<double>(dim)});
      table.add({"kappa", c.kappa});
      table.add({"ball_volume", c.ball_volume});
      table.add({"sphere_area", c.sphere_area});
      table.add({"tanh_deficit", c.tanh_deficit});
      emit(table, o, meta);
      return kOk;
    }

    if (cov->parsed()) {
      ShapePtr s = load_shape(o);
      const std::vector<double> y = parse_vector(y_text);
      double g = 0;
      check(phc_covariance(s.get(), y.data(), y.size(), &g), "covariance");
      Table table({"quantity", "value"});
      table.add({"g", g});
      if (mc_n > 0) {
        phc_mc_estimate e;
        check(phc_mc_covariance(s.get(), y.data(), y.size(), mc_n, o.seed, &e), "Monte Carlo");
        table.add({"g_mc", e.mean});
        table.add({"g_mc_std_error", e.std_error});
      }
      json meta = meta_for("covariance", o, s.get());
      meta["y"] = y;
      emit(table, o, meta);
      return kOk;
    }

    if (heat->parsed()) {
      ShapePtr s = load_shape(o);
      QuadPtr q = load_quad(o);
      phc_breakdown b;
      check(phc_decomposition(s.get(), t, q.get(), &b), "decomposition");
      Table table({"quantity", "value"});
      for (auto [name, v] : {std::pair{"t", b.t}, {"H", b.H}, {"phi", b.phi}, {"psi", b.psi},
                             {"F", b.F}, {"R", b.R}, {"residual", b.residual}, {"D", b.D}})
        table.add({name, v});
      if (mc_n > 0) {
        phc_mc_estimate e;
        check(phc_mc_heat_content(s.get(), t, mc_n, o.seed, &e), "Monte Carlo");
        table.add({"H_mc", e.mean});
        table.add({"H_mc_std_error", e.std_error});
      }
      emit(table, o, meta_for("heat-content", o, s.get()));
      return kOk;
    }

    if (expansion->parsed()) {
      if (!(t_min < t_max)) throw Failure{kUsage, "--t-min must be below --t-max"};
      ShapePtr s = load_shape(o);
      QuadPtr q = load_quad(o);
      std::vector<double> grid(count);
      check(phc_geometric_grid(t_min, t_max, count, grid.data()), "t grid");
      phc_third_term r;
      check(phc_third_term_compute(s.get(), q.get(), grid.data(), grid.size(), &r), "third term");
      Table table({"quantity", "value"});
      table.add({"C_formula", r.C_formula});
      table.add({"C_closed", r.has_closed ? num(r.C_closed) : json(nullptr)});
      table.add({"C_extrapolated", r.C_extrapolated});
      table.add({"extrapolation_err", r.extrapolation_err});
      table.add({"gamma_integral", r.gamma_integral});
      table.add({"F_limit", r.F_limit});
      table.add({"phi_slope", r.phi_slope});
      table.add({"coeff_tlogt", r.coeff_tlogt});
      table.add({"coeff_t", r.coeff_t});
      table.add({"observed_order", num(r.observed_order)});
      table.add({"gamma_integrable", static_cast<double>(r.gamma_integrable)});
      json meta = meta_for("expansion", o, s.get());
      meta["t_grid"] = grid;
      emit(table, o, meta);
      return kOk;
    }

    if (verify->parsed()) {
      QuadPtr q = load_quad(o);
      phc_verify_report* raw = nullptr;
      check(phc_verify(target.c_str(), q.get(), &raw), "verify");
      std::unique_ptr<phc_verify_report, ReportDeleter> report(raw);
      Table table({"target", "criterion", "achieved", "required", "result", "note"});
      const size_t n = phc_verify_row_count(raw);
      for (size_t i = 0; i < n; ++i) {
        phc_verify_row row;
        check(phc_verify_row_at(raw, i, &row), "verify row");
        table.add({row.target, row.criterion, num(row.achieved), row.required,
                   row.pass ? "PASS" : "FAIL", row.note});
      }
      json meta = meta_for("verify", o, nullptr);
      meta["target"] = target;
      emit(table, o, meta);
      return phc_verify_all_passed(raw) ? kOk : kVerifyFailed;
    }

    if (sweep->parsed()) {
      if (!(t_min < t_max)) throw Failure{kUsage, "--t-min must be below --t-max"};
      ShapePtr s = load_shape(o);
      QuadPtr q = load_quad(o);
      std::vector<phc_breakdown> rows(count);
      std::vector<phc_status> statuses(count);
      const phc_status st =
          phc_sweep(s.get(), t_min, t_max, count, q.get(), rows.data(), statuses.data());
      if (is_usage(st)) check(st, "sweep");
      Table table({"t", "H", "phi", "psi", "F", "R", "residual", "D", "status"});
      for (int i = 0; i < count; ++i) {
        const phc_breakdown& b = rows[i];
        table.add({b.t, num(b.H), num(b.phi), num(b.psi), num(b.F), num(b.R),
                   num(b.residual), num(b.D),
                   statuses[i] == PHC_OK ? "ok" : phc_status_string(statuses[i])});
      }
      json meta = meta_for("sweep", o, s.get());
      meta["t_min"] = t_min;
      meta["t_max"] = t_max;
      meta["count"] = count;
      emit(table, o, meta);
      if (st != PHC_OK) {
        std::cerr << "phc: sweep: " << phc_last_error() << "\n";
        return kNumerical;
      }
      return kOk;
    }
  } catch (const Failure& f) {
    std::cerr << "phc: " << f.message << "\n";
    return f.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "phc: " << e.what() << "\n";
    return kNumerical;
  }
  return kUsage;
}
