#include "weylstrip/cli.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "weylstrip/moyal.hpp"
#include "weylstrip/ousg.hpp"
#include "weylstrip/quantize.hpp"

namespace weylstrip::cli {

namespace {

using nlohmann::json;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Minimal insertion-ordered JSON emitter; nlohmann is used for parsing only
// so that report floats stay pinned at 17 significant digits.
class Report {
 public:
  enum class Kind { object, array, number, integer, boolean, text };

  static Report obj() { return Report(Kind::object); }
  static Report arr() { return Report(Kind::array); }
  static Report num(double v) {
    Report r(Kind::number);
    r.scalar_ = fmt17(v);
    return r;
  }
  static Report integer(std::int64_t v) {
    Report r(Kind::integer);
    r.scalar_ = std::to_string(v);
    return r;
  }
  static Report boolean(bool v) {
    Report r(Kind::boolean);
    r.scalar_ = v ? "true" : "false";
    return r;
  }
  static Report text(const std::string& s) {
    Report r(Kind::text);
    r.scalar_ = s;
    return r;
  }
  static Report vec(const Vec& v, int dim) {
    Report r = arr();
    for (int a = 0; a < dim; ++a) r.push(num(v[a]));
    return r;
  }

  Report& set(const std::string& key, Report v) {
    members_.emplace_back(key, std::move(v));
    return *this;
  }
  Report& push(Report v) {
    members_.emplace_back(std::string{}, std::move(v));
    return *this;
  }

  void dump(std::string& out, int depth) const {
    const std::string pad(2 * depth, ' ');
    const std::string pad1(2 * (depth + 1), ' ');
    switch (kind_) {
      case Kind::object:
      case Kind::array: {
        const char open = kind_ == Kind::object ? '{' : '[';
        const char close = kind_ == Kind::object ? '}' : ']';
        if (members_.empty()) {
          out += open;
          out += close;
          return;
        }
        out += open;
        out += '\n';
        for (std::size_t i = 0; i < members_.size(); ++i) {
          out += pad1;
          if (kind_ == Kind::object) {
            out += '"';
            escape(members_[i].first, out);
            out += "\": ";
          }
          members_[i].second.dump(out, depth + 1);
          if (i + 1 < members_.size()) out += ',';
          out += '\n';
        }
        out += pad;
        out += close;
        return;
      }
      case Kind::text:
        out += '"';
        escape(scalar_, out);
        out += '"';
        return;
      default:
        out += scalar_;
        return;
    }
  }

  std::string dump() const {
    std::string out;
    dump(out, 0);
    out += '\n';
    return out;
  }

 private:
  explicit Report(Kind k) : kind_(k) {}
  static void escape(const std::string& s, std::string& out) {
    for (char c : s) {
      if (c == '"' || c == '\\') {
        out += '\\';
        out += c;
      } else if (static_cast<unsigned char>(c) < 0x20) {
        char buf[8];
        std::snprintf(buf, sizeof(buf), "\\u%04x", c);
        out += buf;
      } else {
        out += c;
      }
    }
  }

  Kind kind_;
  std::string scalar_;
  std::vector<std::pair<std::string, Report>> members_;
};

struct ParsedConfig {
  int dim = 1;
  bool quadratic = false;
  QuadraticPotential qpot;
  Potential pot;
  PExponent p;
  GridSpec grid;
  json raw;
};

[[noreturn]] void bad_config(const std::string& what) {
  throw std::runtime_error("config error: " + what);
}

double get_num(const json& j, const std::string& key) {
  if (!j.contains(key) || !j[key].is_number()) bad_config("missing numeric field '" + key + "'");
  return j[key].get<double>();
}

double get_num_or(const json& j, const std::string& key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number()) bad_config("field '" + key + "' must be numeric");
  return j[key].get<double>();
}

Potential polynomial_potential(const std::vector<double>& coeffs, double c) {
  Potential pot;
  pot.dim = 1;
  pot.c = c;
  pot.value = [coeffs](const Vec& x) {
    double v = 0.0;
    for (std::size_t j = coeffs.size(); j-- > 0;) v = v * x[0] + coeffs[j];
    return v;
  };
  pot.gradient = [coeffs](const Vec& x) {
    double v = 0.0;
    for (std::size_t j = coeffs.size(); j-- > 1;) v = v * x[0] + j * coeffs[j];
    return Vec{v, 0.0};
  };
  pot.laplacian = [coeffs](const Vec& x) {
    double v = 0.0;
    for (std::size_t j = coeffs.size(); j-- > 2;) v = v * x[0] + j * (j - 1.0) * coeffs[j];
    return v;
  };
  return pot;
}

ParsedConfig parse_config(const std::string& text) {
  json cfg;
  try {
    cfg = json::parse(text);
  } catch (const std::exception& e) {
    bad_config(std::string("invalid JSON: ") + e.what());
  }
  ParsedConfig pc;
  pc.raw = cfg;

  if (!cfg.contains("potential")) bad_config("missing 'potential'");
  const json& pj = cfg["potential"];
  const std::string ptype = pj.value("type", "");
  const double c = get_num_or(pj, "c", 1.0);
  if (ptype == "quadratic") {
    if (!pj.contains("N") || !pj["N"].is_array()) bad_config("quadratic potential needs matrix 'N'");
    const auto& nj = pj["N"];
    const int d = static_cast<int>(nj.size());
    if (d < 1 || d > 2) bad_config("'N' must be 1x1 or 2x2");
    Mat n{};
    for (int i = 0; i < d; ++i) {
      if (!nj[i].is_array() || static_cast<int>(nj[i].size()) != d) bad_config("'N' must be square");
      for (int j = 0; j < d; ++j) n[i][j] = nj[i][j].get<double>();
    }
    Vec l{};
    if (pj.contains("l")) {
      if (static_cast<int>(pj["l"].size()) != d) bad_config("'l' length must match N");
      for (int i = 0; i < d; ++i) l[i] = pj["l"][i].get<double>();
    }
    pc.quadratic = true;
    pc.qpot = QuadraticPotential::make(d, n, l, c);
    pc.pot = pc.qpot.as_potential();
    pc.dim = d;
  } else if (ptype == "custom-1d") {
    if (!pj.contains("coeffs") || !pj["coeffs"].is_array())
      bad_config("custom-1d potential needs 'coeffs'");
    std::vector<double> coeffs = pj["coeffs"].get<std::vector<double>>();
    pc.pot = polynomial_potential(coeffs, c);
    pc.dim = 1;
    // quadratic truncation, used for growth maps
    Mat n{};
    n[0][0] = coeffs.size() > 2 ? coeffs[2] : 0.0;
    Vec l{coeffs.size() > 1 ? coeffs[1] : 0.0, 0.0};
    pc.qpot = QuadraticPotential::make(1, n, l, c);
  } else {
    bad_config("potential type must be 'quadratic' or 'custom-1d'");
  }

  if (!cfg.contains("p")) bad_config("missing 'p'");
  if (cfg["p"].is_string()) {
    if (cfg["p"].get<std::string>() != "inf") bad_config("'p' must be a number or \"inf\"");
    pc.p = PExponent::make(std::numeric_limits<double>::infinity());
  } else {
    pc.p = PExponent::make(cfg["p"].get<double>());
  }

  if (!cfg.contains("grid")) bad_config("missing 'grid'");
  const json& gj = cfg["grid"];
  auto axis_val = [&](const char* key, int a) -> double {
    if (!gj.contains(key)) bad_config(std::string("grid needs '") + key + "'");
    if (gj[key].is_array()) {
      if (static_cast<int>(gj[key].size()) != pc.dim) bad_config("grid array length != dim");
      return gj[key][a].get<double>();
    }
    return gj[key].get<double>();
  };
  std::array<AxisSpec, 2> axes{};
  for (int a = 0; a < pc.dim; ++a)
    axes[a] = AxisSpec{axis_val("L", a), static_cast<int>(axis_val("n", a))};
  try {
    pc.grid = GridSpec::make(pc.dim, axes);
  } catch (const std::exception& e) {
    bad_config(e.what());
  }
  return pc;
}

SymbolF2 parse_symbol(const json& sj, const ParsedConfig& pc) {
  const std::string type = sj.value("type", "");
  if (type == "ou") {
    if (!pc.quadratic) bad_config("'ou' symbol requires a quadratic potential");
    Complex z;
    if (sj.contains("z")) {
      if (!sj["z"].is_array() || sj["z"].size() != 2) bad_config("'z' must be [re, im]");
      z = Complex{sj["z"][0].get<double>(), sj["z"][1].get<double>()};
    } else {
      z = Complex{get_num(sj, "t"), 0.0};
    }
    return ou_semigroup_symbol(pc.qpot, z);
  }
  if (type == "gaussian") return gaussian_symbol(pc.dim, get_num(sj, "s"));
  if (type == "identity") return identity_symbol(pc.dim);
  if (type == "multiplier") {
    if (pc.dim != 1) bad_config("table multipliers are 1-d");
    if (!sj.contains("table")) bad_config("multiplier symbol needs 'table'");
    const json& tj = sj["table"];
    auto xs = std::make_shared<std::vector<double>>(tj["x"].get<std::vector<double>>());
    auto re = std::make_shared<std::vector<double>>(tj["re"].get<std::vector<double>>());
    std::vector<double> imv(xs->size(), 0.0);
    if (tj.contains("im")) imv = tj["im"].get<std::vector<double>>();
    auto im = std::make_shared<std::vector<double>>(std::move(imv));
    if (xs->size() < 2 || re->size() != xs->size() || im->size() != xs->size())
      bad_config("multiplier table columns must have equal length >= 2");
    auto eval = [xs, re, im](const Vec& p) {
      const double x = p[0];
      if (x < xs->front() || x > xs->back())
        throw std::runtime_error("multiplier table evaluated outside its range");
      std::size_t i = 1;
      while (i + 1 < xs->size() && (*xs)[i] < x) ++i;
      const double x0 = (*xs)[i - 1], x1 = (*xs)[i];
      const double w = (x1 == x0) ? 0.0 : (x - x0) / (x1 - x0);
      return Complex{(1 - w) * (*re)[i - 1] + w * (*re)[i],
                     (1 - w) * (*im)[i - 1] + w * (*im)[i]};
    };
    return multiplier_symbol(1, eval, "multiplier-table");
  }
  bad_config("unknown symbol type '" + type + "'");
}

SymbolF2 config_symbol(const ParsedConfig& pc) {
  if (!pc.raw.contains("symbol")) bad_config("missing 'symbol'");
  return parse_symbol(pc.raw["symbol"], pc);
}

GrowthPair config_growth_pair(const ParsedConfig& pc) {
  return quadratic_growth_pair(pc.qpot, pc.p);
}

std::string side_path(const std::string& stem, const std::string& suffix) {
  return (stem.empty() ? std::string("weylstrip") : stem) + suffix;
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

std::string csv_text(const GridFunction& f) {
  std::string out = f.spec.dim == 1 ? "x0,re,im\n" : "x0,x1,re,im\n";
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    const Vec x = f.spec.point(i);
    for (int a = 0; a < f.spec.dim; ++a) {
      out += fmt17(x[a]);
      out += ',';
    }
    out += fmt17(f.values[i].real());
    out += ',';
    out += fmt17(f.values[i].imag());
    out += '\n';
  }
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << text;
}

void write_pgm(const std::string& path, const RegionBitmap& bm) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << "P5\n" << bm.width << " " << bm.height << "\n255\n";
  // image rows top to bottom = decreasing imaginary part
  for (int j = bm.height - 1; j >= 0; --j)
    for (int i = 0; i < bm.width; ++i)
      os.put(bm.at(i, j) ? static_cast<char>(255) : static_cast<char>(0));
}

// ---- commands -------------------------------------------------------------

CommandResult cmd_growth_pair(const ParsedConfig& pc) {
  const GrowthPair gp = config_growth_pair(pc);
  const GrowthPairCheck chk = validate_growth_pair(pc.pot, pc.p, gp, pc.grid);
  const double tol = get_num_or(pc.raw, "tolerance", -1.0);
  const bool pass = tol < 0.0 || chk.epsilon_hat <= tol;
  Report rep = Report::obj();
  rep.set("command", Report::text("growth-pair"))
      .set("epsilon_hat", Report::num(chk.epsilon_hat))
      .set("argmax_x", Report::vec(chk.argmax_x, pc.dim))
      .set("argmax_y", Report::vec(chk.argmax_y, pc.dim))
      .set("pass", Report::boolean(pass));
  return CommandResult{rep.dump(), pass};
}

CommandResult cmd_hs_norm(const ParsedConfig& pc, const std::string& stem) {
  const SymbolF2 sym = config_symbol(pc);
  const GrowthPair gp = config_growth_pair(pc);
  const GridSpec kspec = pc.grid.frequency_dual();
  const HsNormReport hn = hs_norm(sym, gp.map, pc.grid, kspec);

  const std::string csv = side_path(stem, "_gmax.csv");
  std::string text = pc.dim == 1 ? "k0,re,im\n" : "k0,k1,re,im\n";
  for (std::size_t i = 0; i < hn.g_max.size(); ++i) {
    const Vec k = kspec.point(i);
    for (int a = 0; a < pc.dim; ++a) {
      text += fmt17(k[a]);
      text += ',';
    }
    text += fmt17(hn.g_max[i]);
    text += ",0\n";
  }
  if (!hn.g_max.empty()) write_text(csv, text);

  Report rep = Report::obj();
  rep.set("command", Report::text("hs-norm"))
      .set("symbol", Report::text(sym.name))
      .set("hs0_norm", Report::num(hn.hs0_norm))
      .set("b_norm", Report::num(hn.b_norm))
      .set("total", Report::num(hn.total))
      .set("g_max_csv", Report::text(hn.g_max.empty() ? "" : csv))
      .set("pass", Report::boolean(true));
  return CommandResult{rep.dump(), true};
}

CommandResult cmd_apply(const ParsedConfig& pc, const std::string& stem) {
  const SymbolF2 sym = config_symbol(pc);
  if (!pc.raw.contains("input")) bad_config("apply needs 'input' CSV path");
  const GridFunction f = read_grid_csv(pc.raw["input"].get<std::string>(), pc.grid);
  const KernelMatrix k = build_kernel(sym, pc.pot, pc.p, pc.grid);
  const GridFunction g = kernel_apply_mu(k, pc.pot, f);
  const std::string text = csv_text(g);
  const std::string path = side_path(stem, "_out.csv");
  write_text(path, text);

  char digest[24];
  std::snprintf(digest, sizeof(digest), "%016" PRIx64, fnv1a(text));
  Report rep = Report::obj();
  rep.set("command", Report::text("apply"))
      .set("rows", Report::integer(static_cast<std::int64_t>(g.values.size())))
      .set("output_csv", Report::text(path))
      .set("output_fnv1a", Report::text(digest))
      .set("pass", Report::boolean(true));
  return CommandResult{rep.dump(), true};
}

CommandResult cmd_semigroup_check(const ParsedConfig& pc) {
  if (!pc.quadratic) bad_config("semigroup-check requires a quadratic potential");
  const double t = get_num(pc.raw, "t");
  const double s = get_num(pc.raw, "s");
  const double tol = get_num_or(pc.raw, "tolerance", 1e-6);
  const GridSpec kspec = pc.grid.frequency_dual();

  const SymbolF2 at = ou_semigroup_symbol(pc.qpot, Complex{t, 0.0});
  const SymbolF2 as = ou_semigroup_symbol(pc.qpot, Complex{s, 0.0});
  const SymbolF2 ats = ou_semigroup_symbol(pc.qpot, Complex{t + s, 0.0});
  const SymbolF2 prod = moyal_00(at, as, kspec);

  const PhaseGridFunction f_prod = materialize_f2(prod, pc.grid, pc.grid);
  const PhaseGridFunction f_ref = materialize_f2(ats, pc.grid, pc.grid);
  double sup = 0.0;
  for (std::size_t i = 0; i < f_prod.values.size(); ++i)
    sup = std::max(sup, std::abs(f_prod.values[i] - f_ref.values[i]));

  const bool pass = sup < tol;
  Report rep = Report::obj();
  rep.set("command", Report::text("semigroup-check"))
      .set("t", Report::num(t))
      .set("s", Report::num(s))
      .set("sup_error_F2", Report::num(sup))
      .set("tolerance", Report::num(tol))
      .set("pass", Report::boolean(pass));
  return CommandResult{rep.dump(), pass};
}

CommandResult cmd_moyal_check(const ParsedConfig& pc) {
  if (!pc.raw.contains("symbols") || pc.raw["symbols"].size() != 2)
    bad_config("moyal-check needs 'symbols': [a, b]");
  const SymbolF2 a = parse_symbol(pc.raw["symbols"][0], pc);
  const SymbolF2 b = parse_symbol(pc.raw["symbols"][1], pc);
  const GridSpec kspec = pc.grid.frequency_dual();
  const SymbolF2 ab = moyal(a, b, kspec);

  const KernelMatrix ka = build_kernel(a, pc.pot, pc.p, pc.grid);
  const KernelMatrix kb = build_kernel(b, pc.pot, pc.p, pc.grid);
  const KernelMatrix kab = build_kernel(ab, pc.pot, pc.p, pc.grid);
  const std::vector<Complex> prod =
      matmul(dense_operator(ka), dense_operator(kb), pc.grid.size());
  std::vector<Complex> diff = dense_operator(kab);
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= prod[i];
  const double relerr = frobenius(diff) / frobenius(prod);

  const GrowthPair gp = config_growth_pair(pc);
  const double na = hs_norm(a, gp.map, pc.grid, kspec).total;
  const double nb = hs_norm(b, gp.map, pc.grid, kspec).total;
  const double nab = hs_norm(ab, gp.map, pc.grid, kspec).total;
  const double ratio = nab / (na * nb);

  // identity element, spot-checked against a on a coarse subgrid
  const SymbolF2 one_a = moyal(identity_symbol(pc.dim), a, kspec);
  double id_err = 0.0;
  const std::size_t step = std::max<std::size_t>(1, pc.grid.size() / 16);
  for (std::size_t i = 0; i < pc.grid.size(); i += step) {
    const Vec x = pc.grid.point(i);
    for (std::size_t j = 0; j < kspec.size(); j += step) {
      const Vec k = kspec.point(j);
      const Complex va = a.has_hs0() ? a.f2_hs0(x, k) : Complex{};
      const Complex vo = one_a.has_hs0() ? one_a.f2_hs0(x, k) : Complex{};
      id_err = std::max(id_err, std::abs(va - vo));
    }
    const Complex ba = a.has_multiplier() ? a.multiplier(x) : Complex{};
    const Complex bo = one_a.has_multiplier() ? one_a.multiplier(x) : Complex{};
    id_err = std::max(id_err, std::abs(ba - bo));
  }

  const double ctol = get_num_or(pc.raw, "composition_tolerance", 1e-4);
  const double stol = get_num_or(pc.raw, "submultiplicativity_slack", 5e-3);
  const double itol = get_num_or(pc.raw, "identity_tolerance", 1e-12);
  const bool pass = relerr < ctol && ratio <= 1.0 + stol && id_err < itol;

  Report rep = Report::obj();
  rep.set("command", Report::text("moyal-check"))
      .set("kernel_composition_relerr", Report::num(relerr))
      .set("submultiplicativity_ratio", Report::num(ratio))
      .set("identity_error", Report::num(id_err))
      .set("pass", Report::boolean(pass));
  return CommandResult{rep.dump(), pass};
}

CommandResult cmd_eig_check(const ParsedConfig& pc) {
  if (!pc.quadratic) bad_config("eig-check requires a quadratic potential");
  if (pc.dim != 1) bad_config("eig-check is 1-d");
  if (pc.p.p != 2.0) bad_config("eig-check runs at p = 2");
  const double t = get_num(pc.raw, "t");
  const int n_max = static_cast<int>(get_num_or(pc.raw, "n_max", 3));
  const double margin = get_num_or(pc.raw, "margin", 0.1);
  const double tol = get_num_or(pc.raw, "tolerance", 1e-4);

  const SymbolF2 at = ou_semigroup_symbol(pc.qpot, Complex{t, 0.0});
  const KernelMatrix k = build_kernel(at, pc.pot, pc.p, pc.grid);

  const int n_pts = pc.grid.axis[0].points;
  const int m = std::max(2, static_cast<int>(margin * n_pts));

  bool pass = true;
  Report modes = Report::arr();
  for (int n = 0; n <= n_max; ++n) {
    GridFunction f = GridFunction::sample(pc.grid, [&](const Vec& x) {
      return Complex{hermite(n, x[0]) * std::exp(-0.5 * pc.pot.value(x)), 0.0};
    });
    const GridFunction obs = kernel_apply(k, f);
    const double expected = std::exp(-t * n);

    double err = 0.0, scale_max = 0.0;
    Complex num{}, den{};
    for (int j = m; j < n_pts - m; ++j) {
      const Complex e = expected * f.values[j];
      err = std::max(err, std::abs(obs.values[j] - e));
      scale_max = std::max(scale_max, std::abs(e));
      num += obs.values[j] * std::conj(f.values[j]);
      den += f.values[j] * std::conj(f.values[j]);
    }
    const double relerr = err / scale_max;
    const double ratio = (num / den).real();
    pass = pass && relerr < tol;
    Report mode = Report::obj();
    mode.set("n", Report::integer(n))
        .set("expected", Report::num(expected))
        .set("observed_ratio", Report::num(ratio))
        .set("relerr", Report::num(relerr));
    modes.push(std::move(mode));
  }

  Report rep = Report::obj();
  rep.set("command", Report::text("eig-check"))
      .set("t", Report::num(t))
      .set("modes", std::move(modes))
      .set("tolerance", Report::num(tol))
      .set("pass", Report::boolean(pass));
  return CommandResult{rep.dump(), pass};
}

CommandResult cmd_region(const ParsedConfig& pc, const std::string& stem) {
  if (!pc.quadratic) bad_config("region requires a quadratic potential");
  if (!pc.raw.contains("bbox") || pc.raw["bbox"].size() != 4)
    bad_config("region needs 'bbox': [re0, re1, im0, im1]");
  const double re0 = pc.raw["bbox"][0].get<double>();
  const double re1 = pc.raw["bbox"][1].get<double>();
  const double im0 = pc.raw["bbox"][2].get<double>();
  const double im1 = pc.raw["bbox"][3].get<double>();
  const int res = static_cast<int>(get_num_or(pc.raw, "resolution", 256));

  std::optional<EpsDelta> core;
  if (pc.raw.contains("eps") || pc.raw.contains("delta"))
    core = EpsDelta{get_num(pc.raw, "eps"), get_num(pc.raw, "delta")};

  const SymmetricEig eig = eigh(pc.qpot.n_matrix, pc.dim);
  const RegionBitmap bm = rasterize_region(eig, pc.p, core, re0, re1, im0, im1, res);

  std::int64_t count = 0;
  for (auto v : bm.inside) count += v;

  bool symmetric = true;
  const bool sym_box = std::abs(im0 + im1) < 1e-15 * std::max(1.0, std::abs(im1));
  if (sym_box) {
    for (int j = 0; j < bm.height && symmetric; ++j)
      for (int i = 0; i < bm.width; ++i)
        if (bm.at(i, j) != bm.at(i, bm.height - 1 - j)) {
          symmetric = false;
          break;
        }
  }

  const std::string path = side_path(stem, "_region.pgm");
  write_pgm(path, bm);

  const bool pass = !sym_box || symmetric;
  Report rep = Report::obj();
  rep.set("command", Report::text("region"))
      .set("width", Report::integer(bm.width))
      .set("height", Report::integer(bm.height))
      .set("inside_count", Report::integer(count))
      .set("conjugation_symmetric", Report::boolean(sym_box && symmetric))
      .set("pgm", Report::text(path))
      .set("pass", Report::boolean(pass));
  return CommandResult{rep.dump(), pass};
}

CommandResult cmd_norm_bound(const ParsedConfig& pc, std::uint64_t seed) {
  const SymbolF2 sym = config_symbol(pc);
  const GrowthPair gp = config_growth_pair(pc);
  const int trials = static_cast<int>(get_num_or(pc.raw, "trials", 16));

  const GrowthPairCheck chk = validate_growth_pair(pc.pot, pc.p, gp, pc.grid);
  const HsNormReport hn = hs_norm(sym, gp.map, pc.grid, pc.grid.frequency_dual());
  const KernelMatrix k = build_kernel(sym, pc.pot, pc.p, pc.grid);
  const double lower = norm_lower_estimate(k, pc.p.p, trials, seed);
  const double upper = young_upper_bound(hn, chk.epsilon_hat);
  const bool bracket = lower <= upper * (1.0 + 1e-6);

  Report rep = Report::obj();
  rep.set("command", Report::text("norm-bound"))
      .set("symbol", Report::text(sym.name))
      .set("p", Report::num(pc.p.p))
      .set("epsilon_hat", Report::num(chk.epsilon_hat))
      .set("hs_norm_total", Report::num(hn.total))
      .set("young_upper", Report::num(upper))
      .set("random_lower", Report::num(lower))
      .set("bracket_ok", Report::boolean(bracket))
      .set("pass", Report::boolean(bracket));
  return CommandResult{rep.dump(), bracket};
}

}  // namespace

CommandResult run_command(const std::string& command, const std::string& config_text,
                          std::uint64_t seed, const std::string& out_stem) {
  const ParsedConfig pc = parse_config(config_text);
  if (command == "growth-pair") return cmd_growth_pair(pc);
  if (command == "hs-norm") return cmd_hs_norm(pc, out_stem);
  if (command == "apply") return cmd_apply(pc, out_stem);
  if (command == "semigroup-check") return cmd_semigroup_check(pc);
  if (command == "moyal-check") return cmd_moyal_check(pc);
  if (command == "eig-check") return cmd_eig_check(pc);
  if (command == "region") return cmd_region(pc, out_stem);
  if (command == "norm-bound") return cmd_norm_bound(pc, seed);
  throw std::runtime_error("unknown command '" + command + "'");
}

void write_grid_csv(const std::string& path, const GridFunction& f) {
  write_text(path, csv_text(f));
}

GridFunction read_grid_csv(const std::string& path, const GridSpec& expected) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read " + path);
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("empty CSV " + path);

  GridFunction f = GridFunction::zeros(expected);
  const int d = expected.dim;
  std::size_t row = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (row >= f.values.size()) throw std::runtime_error("CSV has too many rows");
    std::istringstream ss(line);
    double cols[4] = {0, 0, 0, 0};
    std::string cell;
    for (int c = 0; c < d + 2; ++c) {
      if (!std::getline(ss, cell, ',')) throw std::runtime_error("CSV row too short");
      cols[c] = std::stod(cell);
    }
    const Vec x = expected.point(row);
    for (int a = 0; a < d; ++a)
      if (std::abs(cols[a] - x[a]) > 1e-9 * std::max(1.0, expected.axis[a].half_width))
        throw std::runtime_error("CSV coordinates do not match the configured grid");
    f.values[row] = Complex{cols[d], cols[d + 1]};
    ++row;
  }
  if (row != f.values.size()) throw std::runtime_error("CSV has too few rows");
  return f;
}

}  // namespace weylstrip::cli
