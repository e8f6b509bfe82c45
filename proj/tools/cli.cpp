#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "minhyp/catenoid.hpp"
#include "minhyp/checks.hpp"
#include "minhyp/errors.hpp"
#include "minhyp/hyperbolic.hpp"
#include "minhyp/jacobi.hpp"
#include "minhyp/report.hpp"
#include "minhyp/transinv.hpp"

namespace minhyp::cli {

namespace {

using report::Json;
using report::Table;

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kPi = std::numbers::pi;

struct Config {
  std::string command;
  int n = 2;
  std::vector<double> a;
  std::vector<double> d;
  std::vector<double> mesh;
  double tol = 1e-10;
  std::string format = "csv";
  std::string out;
  std::string family = "catenoid";
  double perturb_f = 0.0;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when a computed verdict contradicts the expected structure.
struct CertificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double x) { return report::format_number(x); }

CatenoidOptions catenoid_options(const Config& cfg) {
  CatenoidOptions o;
  o.tolerance.rel = cfg.tol;
  return o;
}

std::vector<double> or_default(const std::vector<double>& v, std::vector<double> fallback) {
  return v.empty() ? fallback : v;
}

std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

void validate(const Config& cfg) {
  if (cfg.n < 2 || cfg.n > 64) throw UsageError("--n must be an integer in [2, 64]");
  for (double a : cfg.a)
    if (!(a > 0.0) || !std::isfinite(a)) throw UsageError("--a values must be finite and > 0");
  for (double d : cfg.d)
    if (!(d > 0.0) || !std::isfinite(d)) throw UsageError("--d values must be finite and > 0");
  if (!(cfg.tol > 0.0) || !(cfg.tol < 1e-2)) throw UsageError("--tol must lie in (0, 1e-2)");
  for (double m : cfg.mesh)
    if (!(m > 0.0) || !std::isfinite(m)) throw UsageError("--mesh values must be finite and > 0");
  if (cfg.format != "csv" && cfg.format != "json" && cfg.format != "svg")
    throw UsageError("--format must be csv, json or svg");
}

int sample_count(const Config& cfg, int fallback) {
  if (cfg.mesh.empty()) return fallback;
  const double m = cfg.mesh.front();
  if (m < 3 || m > 1e6 || m != std::floor(m))
    throw UsageError("--mesh for this command is a sample count, an integer >= 3");
  return static_cast<int>(m);
}

std::vector<double> mesh_sizes(const Config& cfg, std::vector<double> fallback) {
  const auto h = or_default(cfg.mesh, std::move(fallback));
  for (double x : h)
    if (!(x < 0.5)) throw UsageError("--mesh for this command lists grid spacings h < 0.5");
  return h;
}

// Writes a single document to --out or to the output stream.
void emit(const Config& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out.empty())
    out << text;
  else
    report::write_file(cfg.out, text);
}

void emit_table(const Config& cfg, const std::string& kind, Json meta, const Table& table,
                std::ostream& out) {
  if (cfg.format == "svg") throw UsageError(cfg.command + " does not produce SVG output");
  if (cfg.format == "csv") {
    emit(cfg, table.to_csv(), out);
    return;
  }
  Json doc = report::document(kind);
  for (auto it = meta.begin(); it != meta.end(); ++it) doc[it.key()] = it.value();
  doc["rows"] = table.to_json();
  emit(cfg, report::dump(doc), out);
}

std::string out_dir(const Config& cfg) { return cfg.out.empty() ? "minhyp-out" : cfg.out; }

std::string join(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

// -- profile ------------------------------------------------------------------

// Samples clustered toward +-T so the curve reaches far out in rho.
std::vector<double> catenoid_grid(double T, int count) {
  std::vector<double> t(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double u = -1.0 + 2.0 * (i + 0.5) / count;
    t[static_cast<std::size_t>(i)] = T * std::sin(0.5 * kPi * u);
  }
  return t;
}

struct CatenoidRows {
  Table table;
  std::vector<std::array<double, 2>> curve;  // (tanh(rho/2), t)
};

CatenoidRows catenoid_profile_table(const Catenoid& c, int count) {
  const int n = c.n();
  const auto t = catenoid_grid(c.half_height(), count);
  const auto prof = c.profile(t);
  CatenoidRows rows{Table({"t", "t_err", "rho", "rho_err", "f_t", "f_t_err", "v", "v_err", "normA2",
                           "normA2_err", "H_residual", "H_residual_err"}),
                    {}};
  for (std::size_t i = 0; i < t.size(); ++i) {
    const RotationProfilePoint& p = prof[i];
    const CurvatureRecord cr = curvatures_rotation(p, n);
    // Second route: radius from the lambda inversion, slope and curvature
    // from the first integral at that radius.
    const double rho_alt = c.profile_inverse(t[i]);
    const double lam_err = c.lambda_result(rho_alt).error_estimate;
    const RotationProfilePoint q = c.point_at_rho(rho_alt);
    const double ft_alt = std::copysign(q.f_t, p.f_t);
    const double v_alt = std::copysign(v1_at_rho(c, rho_alt), p.f_t);
    const double A2_alt = c.extrinsic_data(rho_alt).normA2;
    const double rho_err = std::max(std::fabs(p.f - rho_alt), lam_err * std::fabs(p.f_t));
    const double ft_err = std::max(std::fabs(p.f_t - ft_alt), 4 * kEps * std::fabs(p.f_t));
    const double v_err = std::max(std::fabs(cr.v - v_alt), 4 * kEps);
    const double A2_err = std::max(std::fabs(cr.normA2 - A2_alt), 4 * kEps * cr.normA2);
    const double H_err =
        4 * kEps * (std::fabs(cr.k_meridian) + (n - 1) * std::fabs(cr.k_sphere)) / n;
    rows.table.add_row({t[i], 0.0, p.f, rho_err, p.f_t, ft_err, cr.v, v_err, cr.normA2, A2_err, cr.H,
                        H_err});
    rows.curve.push_back({report::disk_coordinate(p.f), t[i]});
  }
  return rows;
}

std::vector<double> translation_grid(const TranslationSurface& s, int count) {
  constexpr double span = 10.0;
  std::vector<double> rho;
  for (int i = 0; i < count; ++i) {
    const double u = static_cast<double>(i) / (count - 1);
    switch (s.regime) {
      case Regime::bigraph: rho.push_back(s.a + span * u * u); break;
      case Regime::graph_half: {
        const double w = static_cast<double>(i + 1) / count;
        rho.push_back(span * w * w);
        break;
      }
      case Regime::graph_entire: {
        const double w = -1.0 + 2.0 * u;
        rho.push_back(span * w * std::fabs(w));
        break;
      }
    }
  }
  return rho;
}

struct TranslationRows {
  Table table;
  std::vector<std::array<double, 2>> curve;  // (tanh(rho/2), mu)
};

TranslationRows translation_profile_table(const TranslationSurface& s, int count) {
  TranslationRows rows{Table({"regime", "rho", "rho_err", "mu", "mu_err", "mu_dot", "mu_dot_err", "k_G",
                              "k_G_err", "k_E", "k_E_err"}),
                       {}};
  for (double rho : translation_grid(s, count)) {
    TranslationProfilePoint p = translation_slopes(s, rho);
    quad::QuadratureResult mu;
    switch (s.regime) {
      case Regime::bigraph: mu = mu_plus(s.n, s.a, rho); break;
      case Regime::graph_half: mu = mu_zero(s.n, rho); break;
      case Regime::graph_entire: mu = mu_minus(s.n, s.d, rho); break;
    }
    p.mu = mu.value;
    double kG, kE;
    if (std::isinf(p.mu_dot)) {
      kG = -(s.n - 1) * std::tanh(rho);
      kE = std::tanh(rho);
    } else {
      const CurvatureRecord cr = curvatures_translation(p, s.n);
      kG = cr.k_meridian;
      kE = cr.k_sphere;
    }
    rows.table.add_row({std::string(regime_name(s.regime)), rho, 0.0, p.mu, mu.error_estimate,
                        p.mu_dot, 8 * kEps * std::fabs(p.mu_dot), kG, 8 * kEps * std::fabs(kG), kE,
                        8 * kEps * std::fabs(kE)});
    rows.curve.push_back({report::disk_coordinate(rho), p.mu});
  }
  return rows;
}

std::string param_tag(const char* name, double x) { return std::string(name) + num(x); }

int cmd_profile(const Config& cfg, std::ostream& out) {
  const int count = sample_count(cfg, 201);
  const std::string dir = out_dir(cfg);
  const bool tables = cfg.format != "svg";
  const std::string ext = cfg.format == "json" ? ".json" : ".csv";
  std::vector<std::string> written;

  auto write_table = [&](const std::string& stem, const std::string& kind, Json meta,
                         const Table& t) {
    if (!tables) return;
    const std::string path = join(dir, stem + ext);
    if (cfg.format == "csv") {
      report::write_file(path, t.to_csv());
    } else {
      Json doc = report::document(kind);
      for (auto it = meta.begin(); it != meta.end(); ++it) doc[it.key()] = it.value();
      doc["rows"] = t.to_json();
      report::write_file(path, report::dump(doc));
    }
    written.push_back(path);
  };

  report::Figure fig;
  if (cfg.family == "catenoid") {
    const auto as = or_default(cfg.a, {0.5, 1.0, 2.0});
    const double half = kPi / (2.0 * (cfg.n - 1));
    fig.title = "Catenaries, n=" + std::to_string(cfg.n);
    fig.y_min = -1.05 * half;
    fig.y_max = 1.05 * half;
    fig.reference_lines = {-half, half};
    for (std::size_t i = 0; i < as.size(); ++i) {
      const Catenoid c(cfg.n, as[i], catenoid_options(cfg));
      CatenoidRows rows = catenoid_profile_table(c, count);
      Json meta = Json::object();
      meta["family"] = "catenoid";
      meta["n"] = cfg.n;
      meta["a"] = as[i];
      meta["T"] = c.half_height();
      meta["T_err"] = c.half_height_result().error_estimate;
      write_table("catenoid_n" + std::to_string(cfg.n) + "_" + param_tag("a", as[i]),
                  "profile", meta, rows.table);
      fig.series.push_back({"a=" + num(as[i]), std::move(rows.curve), report::palette(i)});
    }
    const std::string svg = join(dir, "catenoids_n" + std::to_string(cfg.n) + ".svg");
    report::write_file(svg, report::to_svg(fig));
    written.push_back(svg);
  } else if (cfg.family == "translation") {
    const auto ds = or_default(cfg.d, {0.5, 1.0, 2.0});
    constexpr double y_clip = 3.0;
    fig.title = "Translation generatrices, n=" + std::to_string(cfg.n);
    fig.x_min = -1.0;
    fig.y_label = "mu";
    fig.y_min = -y_clip;
    fig.y_max = y_clip;
    for (std::size_t i = 0; i < ds.size(); ++i) {
      const TranslationSurface s = make_translation_surface(cfg.n, ds[i]);
      TranslationRows rows = translation_profile_table(s, count);
      Json meta = Json::object();
      meta["family"] = "translation";
      meta["n"] = cfg.n;
      meta["d"] = ds[i];
      meta["regime"] = regime_name(s.regime);
      if (s.regime == Regime::bigraph) meta["a"] = s.a;
      write_table("translation_n" + std::to_string(cfg.n) + "_" + param_tag("d", ds[i]),
                  "profile", meta, rows.table);
      auto clip = [&](std::vector<std::array<double, 2>> pts) {
        std::erase_if(pts, [&](const auto& p) { return std::fabs(p[1]) > y_clip; });
        return pts;
      };
      const std::string label = "d=" + num(ds[i]) + " (" + regime_name(s.regime) + ")";
      fig.series.push_back({label, clip(rows.curve), report::palette(i)});
      if (s.regime == Regime::bigraph) {
        auto mirrored = rows.curve;
        for (auto& p : mirrored) p[1] = -p[1];
        std::reverse(mirrored.begin(), mirrored.end());
        fig.series.push_back({label + " lower sheet", clip(mirrored), report::palette(i), true});
      }
    }
    const std::string svg = join(dir, "translations_n" + std::to_string(cfg.n) + ".svg");
    report::write_file(svg, report::to_svg(fig));
    written.push_back(svg);
  } else {
    throw UsageError("--family must be catenoid or translation");
  }
  for (const auto& path : written) out << path << '\n';
  return ok;
}

// -- heights ------------------------------------------------------------------

int cmd_heights(const Config& cfg, std::ostream& out) {
  std::vector<double> as = cfg.a, ds = cfg.d;
  if (as.empty() && ds.empty()) {
    as = {0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0};
    ds = {0.5, 0.9, 0.99, 1.0, 1.01, 1.1, 2.0, 10.0, 100.0};
  }
  as = sorted_unique(as);
  ds = sorted_unique(ds);
  const double ref = kPi / (cfg.n - 1);
  Table t({"family", "regime", "n", "param", "param_err", "height", "height_err", "reference",
           "reference_err", "relation", "monotone"});
  double previous = -1.0;
  for (double a : as) {
    const Catenoid c(cfg.n, a, catenoid_options(cfg));
    const double h = c.height();
    const bool mono = h > previous;
    previous = h;
    t.add_row({std::string("catenoid"), std::string("catenoid"), static_cast<long long>(cfg.n), a,
               0.0, h, 2.0 * c.half_height_result().error_estimate, ref, 0.0,
               std::string(h < ref ? "below" : "not_below"), mono});
  }
  std::optional<Regime> last_regime;
  for (double d : ds) {
    const HeightResult h = translation_height(cfg.n, d);
    bool mono = true;
    if (last_regime && *last_regime == h.regime) {
      // Increasing toward d = 1 from below, decreasing above it.
      mono = h.regime == Regime::bigraph ? h.value < previous : h.value > previous;
    }
    last_regime = h.regime;
    previous = h.value;
    const char* rel = h.regime == Regime::bigraph ? (h.value > ref ? "above" : "not_above") : "n/a";
    t.add_row({std::string("translation"), std::string(regime_name(h.regime)),
               static_cast<long long>(cfg.n), d, 0.0, h.value, h.error_estimate, ref, 0.0,
               std::string(rel), mono});
  }
  Json meta = Json::object();
  meta["n"] = cfg.n;
  meta["reference"] = "pi/(n-1)";
  emit_table(cfg, "heights", meta, t, out);
  return ok;
}

// -- envelope -----------------------------------------------------------------

int cmd_envelope(const Config& cfg, std::ostream& out) {
  const auto as = sorted_unique(or_default(cfg.a, {0.25, 0.5, 1.0, 1.5, 2.0, 3.0}));
  const int count = sample_count(cfg, 201);
  const std::string dir = out_dir(cfg);
  Table t({"a", "a_err", "T", "T_err", "sigma_e", "sigma_e_err", "sigma_det", "sigma_det_err",
           "sigma_gap", "sigma_gap_err", "tau", "tau_err", "x", "x_err", "agree_1e-6",
           "monotone"});
  report::Figure fig;
  const double half = kPi / (2.0 * (cfg.n - 1));
  fig.title = "Catenaries and envelope, n=" + std::to_string(cfg.n);
  fig.y_min = -1.05 * half;
  fig.y_max = 1.05 * half;
  fig.reference_lines = {-half, half};
  std::vector<std::array<double, 2>> locus_up, locus_down;
  double prev_x = -1.0, prev_s = -1.0;
  for (std::size_t i = 0; i < as.size(); ++i) {
    const Catenoid c(cfg.n, as[i], catenoid_options(cfg));
    const double se = threshold_sigma(c);
    const double sd = envelope_sigma(c);
    const double tau = threshold_tau(c, se);
    const double rho = c.profile_inverse(se);
    const double lam_err = c.lambda_result(rho).error_estimate;
    const double gap = std::fabs(se - sd);
    const double s_err = std::max(gap, lam_err + 1e-12);
    const double x = report::disk_coordinate(rho);
    // dx/drho = 1 / (2 cosh^2(rho/2)); rho error from the lambda error.
    const double sech = hyp::sech(0.5 * rho);
    const double x_err = 0.5 * sech * sech * lam_err * std::fabs(c.point_at_rho(rho).f_t);
    const bool mono = x > prev_x && se > prev_s;
    prev_x = x;
    prev_s = se;
    t.add_row({as[i], 0.0, c.half_height(), c.half_height_result().error_estimate, se, s_err, sd,
               s_err, gap, 4 * kEps * se, tau, lam_err + 1e-12, x, x_err, gap <= 1e-6, mono});
    locus_up.push_back({x, se});
    locus_down.push_back({x, -se});
    fig.series.push_back({"a=" + num(as[i]), catenoid_profile_table(c, count).curve,
                          report::palette(i)});
  }
  fig.series.push_back({"envelope", locus_up, "#000000", true});
  fig.series.push_back({"envelope (t<0)", locus_down, "#000000", true});
  fig.series.push_back({"contact points", locus_up, "#000000", false, true});

  std::vector<std::string> written;
  const std::string stem = "envelope_n" + std::to_string(cfg.n);
  if (cfg.format != "svg") {
    const std::string path = join(dir, stem + (cfg.format == "json" ? ".json" : ".csv"));
    if (cfg.format == "csv") {
      report::write_file(path, t.to_csv());
    } else {
      Json doc = report::document("envelope");
      doc["n"] = cfg.n;
      doc["rows"] = t.to_json();
      report::write_file(path, report::dump(doc));
    }
    written.push_back(path);
  }
  const std::string svg = join(dir, stem + ".svg");
  report::write_file(svg, report::to_svg(fig));
  written.push_back(svg);
  for (const auto& p : written) out << p << '\n';

  for (const auto& row : t.rows())
    if (!std::get<bool>(row[14])) throw CertificationFailure("sigma from e and from the envelope disagree beyond 1e-6");
  return ok;
}

// -- stability ----------------------------------------------------------------

Json spectrum_json(const SpectralResult& r) {
  Json j = Json::object();
  Json ev = Json::array(), er = Json::array(), rich = Json::array(), fine = Json::array();
  for (std::size_t i = 0; i < r.richardson.size(); ++i) {
    ev.push_back(report::number(r.eigenvalues[i]));
    fine.push_back(report::number(r.eigenvalues_fine[i]));
    rich.push_back(report::number(r.richardson[i]));
    er.push_back(report::number(r.richardson_error[i]));
  }
  j["h"] = r.h_used;
  j["eigenvalues"] = ev;
  j["eigenvalues_half_h"] = fine;
  j["richardson"] = rich;
  j["richardson_err"] = er;
  j["negative_count"] = r.negative_count;
  j["lambda1_is_zero"] = r.lambda1_is_zero;
  return j;
}

int cmd_stability(const Config& cfg, std::ostream& out) {
  const auto as = sorted_unique(or_default(cfg.a, {1.0}));
  const auto hs = mesh_sizes(cfg, {1e-2, 5e-3});
  constexpr int k_max = 5;
  Json doc = report::document("stability");
  doc["n"] = cfg.n;
  doc["k_max"] = k_max;
  Json items = Json::array();
  Table modes({"a", "a_err", "S", "S_err", "h", "h_err", "k", "expected_negative", "negative_count",
               "lambda1", "lambda1_err", "lambda2", "lambda2_err", "ok"});
  bool all_passed = true;
  for (double a : as) {
    const Catenoid c(cfg.n, a, catenoid_options(cfg));
    const double T = c.half_height();
    const StabilityThresholds th = stability_thresholds(c);
    Json item = Json::object();
    item["a"] = a;
    item["T"] = T;
    item["T_err"] = c.half_height_result().error_estimate;
    item["C"] = th.C;
    item["C_err"] = c.constant_C_result().error_estimate;
    item["sigma"] = th.sigma;
    item["envelope_sigma"] = envelope_sigma(c);
    item["sigma_err"] = std::fabs(th.sigma - item["envelope_sigma"].get<double>()) + 1e-12;
    item["tau"] = th.tau;
    item["tau_err"] = 1e-12 + c.lambda_result(c.profile_inverse(th.tau)).error_estimate;
    item["ordering_ok"] = 0.0 < th.tau && th.tau < th.sigma && th.sigma < T;

    Json betas = Json::array();
    for (double alpha : {0.5 * th.tau, th.tau, 0.5 * (th.tau + T), 0.9 * T}) {
      Json b = Json::object();
      b["alpha"] = alpha;
      b["W"] = limit_W(c, alpha);
      const auto beta = threshold_beta(c, alpha);
      b["beta"] = beta ? Json(*beta) : Json(nullptr);
      betas.push_back(std::move(b));
    }
    item["beta"] = std::move(betas);

    Json critical = Json::array();
    for (double h : hs) critical.push_back(spectrum_json(eigen_bottom(assemble_mode_operator(c, -th.sigma, th.sigma, 0, h), 2)));
    item["critical_domain"] = std::move(critical);

    const double S_above = std::min(1.1 * th.sigma, 0.5 * (th.sigma + T));
    const std::vector<double> S_list{0.5 * th.sigma, 0.9 * th.sigma, S_above, 0.95 * T};
    const IndexCertificate cert = certify_index(c, S_list, hs, k_max);
    for (const ModeCheck& m : cert.checks) {
      const auto& sp = m.spectrum;
      modes.add_row({a, 0.0, m.S, 0.0, m.h, 0.0, static_cast<long long>(m.k),
                     static_cast<long long>(m.expected_negative),
                     static_cast<long long>(sp.negative_count), sp.richardson.at(0),
                     sp.richardson_error.at(0), sp.richardson.size() > 1 ? sp.richardson[1] : NAN,
                     sp.richardson_error.size() > 1 ? sp.richardson_error[1] : NAN, m.ok});
    }
    const SpectralResult tail = eigen_bottom(assemble_tail_operator(c, -th.tau, 0, hs.back()), 2);
    Json tail_json = spectrum_json(tail);
    tail_json["domain"] = "(-tau, T) capped at rho_max";
    tail_json["note"] = "Dirichlet cap; stability of the capped domain is evidence, not proof";
    tail_json["stable_within_error"] =
        tail.richardson.at(0) > -5.0 * tail.richardson_error.at(0) - 1e-12;
    item["tail_domain"] = std::move(tail_json);

    item["index"] = cert.index;
    item["certified"] = cert.passed;
    item["failures"] = cert.failures;
    item["note"] = cert.note;
    item["verdict"] = cert.passed ? "index=1" : "certification failed";
    all_passed = all_passed && cert.passed && item["ordering_ok"].get<bool>();
    items.push_back(std::move(item));
  }
  doc["catenoids"] = std::move(items);
  doc["modes"] = modes.to_json();
  doc["passed"] = all_passed;
  if (cfg.format == "svg") throw UsageError("stability does not produce SVG output");
  emit(cfg, cfg.format == "csv" ? modes.to_csv() : report::dump(doc), out);
  if (!all_passed) throw CertificationFailure("index certification failed");
  return ok;
}

// -- curvature ----------------------------------------------------------------

int cmd_curvature(const Config& cfg, std::ostream& out) {
  const auto as = sorted_unique(or_default(cfg.a, {0.5, 1.0}));
  const auto ds = sorted_unique(or_default(cfg.d, cfg.n == 2 ? std::vector<double>{0.5, 1.0, 2.0}
                                                             : std::vector<double>{}));
  Table t({"family", "n", "param", "param_err", "quantity", "rho_max", "rho_max_err", "value",
           "value_err", "value_tail_err"});
  const std::vector<double> rho_max{10.0, 20.0, 30.0};

  auto add_growth = [&](const std::string& family, double p, const std::vector<double>& values) {
    const double rate = fit_exponential_rate(rho_max, values);
    const double r1 = std::log(values[1] / values[0]) / (rho_max[1] - rho_max[0]);
    const double r2 = std::log(values[2] / values[1]) / (rho_max[2] - rho_max[1]);
    t.add_row({family, static_cast<long long>(cfg.n), p, 0.0, std::string("growth_rate"), NAN,
               NAN, rate, std::fabs(r2 - r1), 0.0});
  };

  for (double a : as) {
    const Catenoid c(cfg.n, a, catenoid_options(cfg));
    const CurvatureIntegral ext = total_extrinsic_curvature(c);
    t.add_row({std::string("catenoid"), static_cast<long long>(cfg.n), a, 0.0,
               std::string("total_extrinsic"), INFINITY, 0.0, ext.value, ext.error_estimate,
               ext.tail_bound});
    if (cfg.n == 2) {
      std::vector<double> values;
      for (double rm : rho_max) {
        const CurvatureIntegral k = intrinsic_curvature_partial(a, rm);
        values.push_back(k.value);
        t.add_row({std::string("catenoid"), 2LL, a, 0.0, std::string("intrinsic_partial"), rm,
                   0.0, k.value, k.error_estimate, 0.0});
      }
      add_growth("catenoid", a, values);
    }
  }
  if (!ds.empty() && cfg.n != 2) throw UsageError("translation curvature integrals need --n 2");
  for (double d : ds) {
    std::vector<double> values;
    for (double rm : rho_max) {
      const CurvatureIntegral k = total_curvature_partial(d, rm);
      values.push_back(k.value);
      t.add_row({std::string("translation"), 2LL, d, 0.0, std::string("intrinsic_partial"), rm,
                 0.0, k.value, k.error_estimate, 0.0});
    }
    add_growth("translation", d, values);
  }
  Json meta = Json::object();
  meta["n"] = cfg.n;
  meta["sphere_area_included"] = false;
  meta["translation_measure"] = "per unit length of the translation orbit";
  emit_table(cfg, "curvature", meta, t, out);
  return ok;
}

// -- translation --------------------------------------------------------------

int cmd_translation(const Config& cfg, std::ostream& out) {
  const auto ds = sorted_unique(or_default(cfg.d, {0.5, 1.0, 2.0}));
  const auto rho_in = or_default(cfg.mesh, {1.0, 2.0, 5.0, 10.0, 20.0});
  Table t({"d", "d_err", "regime", "a", "a_err", "height", "height_err", "curvature_at_last_rho",
           "curvature_at_last_rho_err", "decreasing", "minimal", "v_positive", "passed"});
  Json doc = report::document("translation");
  doc["n"] = cfg.n;
  Json reports = Json::array();
  bool all = true;
  for (double d : ds) {
    const TranslationSurface s = make_translation_surface(cfg.n, d);
    std::vector<double> rhos;
    for (double r : sorted_unique(rho_in))
      if (s.regime != Regime::bigraph || r > s.a) rhos.push_back(r);
    if (rhos.empty()) throw UsageError("no rho in --mesh lies inside the domain of M_d for d=" + num(d));
    const CurvatureDecayReport rep = curvature_decay_check(cfg.n, d, rhos);
    const HeightResult h = translation_height(cfg.n, d);
    const double last = rep.rows.back().sum_abs;
    t.add_row({d, 0.0, std::string(regime_name(s.regime)), s.a, 4 * kEps * s.a, h.value,
               h.error_estimate, last, 8 * kEps * last, rep.decreasing, rep.minimal,
               rep.v_positive, rep.passed});
    Json r = Json::object();
    r["d"] = d;
    r["regime"] = regime_name(s.regime);
    Json rows = Json::array();
    for (const auto& row : rep.rows) {
      Json j = Json::object();
      j["rho"] = row.rho;
      j["k_G"] = row.k_G;
      j["k_G_err"] = 8 * kEps * std::fabs(row.k_G);
      j["k_E"] = row.k_E;
      j["k_E_err"] = 8 * kEps * std::fabs(row.k_E);
      j["nH"] = row.nH;
      j["nH_err"] = 8 * kEps * (std::fabs(row.k_G) + (cfg.n - 1) * std::fabs(row.k_E));
      j["v"] = row.v;
      j["v_err"] = 4 * kEps;
      rows.push_back(std::move(j));
    }
    r["rows"] = std::move(rows);
    r["passed"] = rep.passed;
    reports.push_back(std::move(r));
    all = all && rep.passed;
  }
  doc["rows"] = t.to_json();
  doc["decay"] = std::move(reports);
  doc["passed"] = all;
  if (cfg.format == "svg") throw UsageError("translation does not produce SVG output");
  emit(cfg, cfg.format == "csv" ? t.to_csv() : report::dump(doc), out);
  if (!all) throw CertificationFailure("curvature decay check failed");
  return ok;
}

// -- check ----------------------------------------------------------------------

int cmd_check(const Config& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.format == "svg") throw UsageError("check writes a JSON or CSV summary");
  SuiteOptions opt;
  opt.perturb_f = cfg.perturb_f;
  opt.quad_rel_tol = cfg.tol;
  if (!cfg.mesh.empty()) opt.mesh = mesh_sizes(cfg, {});
  const auto results = run_invariant_suite(opt);
  bool all = true;
  for (const auto& r : results) {
    err << (r.passed ? "PASS " : "FAIL ") << r.module << '/' << r.name << " value=" << num(r.value)
        << " threshold=" << num(r.threshold) << '\n';
    all = all && r.passed;
  }
  if (cfg.format == "csv") {
    Table t({"module", "name", "passed", "detail"});
    for (const auto& r : results) t.add_row({r.module, r.name, r.passed, r.detail});
    emit(cfg, t.to_csv(), out);
  } else {
    emit(cfg, report::dump(suite_json(results)), out);
  }
  if (!all) throw CertificationFailure("invariant suite reported failures");
  return ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minimal hypersurfaces of H^n x R: catenoids, translation surfaces, stability", "minhyp"};
  app.require_subcommand(1);
  Config cfg;

  auto common = [&cfg](CLI::App* sub) {
    sub->add_option("--n", cfg.n, "dimension n >= 2")->capture_default_str();
    sub->add_option("--a", cfg.a, "neck radii a (comma list)")->delimiter(',');
    sub->add_option("--d", cfg.d, "first-integral constants d (comma list)")->delimiter(',');
    sub->add_option("--mesh", cfg.mesh,
                    "sample count (profile, envelope), grid spacings h (stability, check) or "
                    "radii rho (translation); comma list")
        ->delimiter(',');
    sub->add_option("--tol", cfg.tol, "relative quadrature tolerance")->capture_default_str();
    sub->add_option("--format", cfg.format, "csv | json | svg")->capture_default_str();
    sub->add_option("--out", cfg.out, "output file, or directory for profile/envelope");
  };

  auto* profile = app.add_subcommand("profile", "profile tables and SVG generating curves");
  common(profile);
  profile->add_option("--family", cfg.family, "catenoid | translation")->capture_default_str();
  common(app.add_subcommand("heights", "heights h_R(a) and h_T(d) against pi/(n-1)"));
  common(app.add_subcommand("envelope", "sigma(a) from e and from the envelope, with SVG overlay"));
  common(app.add_subcommand("stability", "thresholds, mode spectra and index certificate"));
  common(app.add_subcommand("curvature", "total extrinsic and partial intrinsic curvature"));
  common(app.add_subcommand("translation", "translation surfaces: heights and curvature decay"));
  auto* check = app.add_subcommand("check", "run the invariant suite");
  common(check);
  check->add_option("--perturb-f", cfg.perturb_f, "add this offset to f in the first-integral check");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? ok : usage;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    validate(cfg);
    if (cfg.command == "profile") return cmd_profile(cfg, out);
    if (cfg.command == "heights") return cmd_heights(cfg, out);
    if (cfg.command == "envelope") return cmd_envelope(cfg, out);
    if (cfg.command == "stability") return cmd_stability(cfg, out);
    if (cfg.command == "curvature") return cmd_curvature(cfg, out);
    if (cfg.command == "translation") return cmd_translation(cfg, out);
    if (cfg.command == "check") return cmd_check(cfg, out, err);
    throw UsageError("unknown subcommand " + cfg.command);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return usage;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << '\n';
    return usage;
  } catch (const RegimeError& e) {
    err << "usage error: " << e.what() << '\n';
    return usage;
  } catch (const CertificationFailure& e) {
    err << "certification failure: " << e.what() << '\n';
    return certification_failure;
  } catch (const AccuracyError& e) {
    err << "numeric failure: " << e.what() << " (best estimate " << num(e.best_estimate())
        << ", error " << num(e.error_estimate()) << ")\n";
    return numeric_failure;
  } catch (const std::exception& e) {
    err << "numeric failure: " << e.what() << '\n';
    return numeric_failure;
  }
}

}  // namespace minhyp::cli
