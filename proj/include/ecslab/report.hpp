#pragma once

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ecslab/checks.hpp"
#include "ecslab/geometry.hpp"
#include "ecslab/olszak.hpp"
#include "ecslab/roter.hpp"

namespace ecslab {

using Json = nlohmann::ordered_json;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One case from a config document. f_coeffs are the coefficients of f
/// in x^1, ascending degree.
struct CaseConfig {
  std::string id;
  int n = 0;
  std::vector<Rational> f_coeffs;
  RationalMatrix G;
  RationalMatrix A;
  std::vector<Point> sample_points;
};

/// Fixed deterministic sample set used when a case omits sample_points:
///   (0,1,0,...,0), (1,1,...,1), (1,-1,1,-1,...),
///   (1/2,1/3,...,1/(n+1)), (1,2,...,n).
inline std::vector<Point> default_sample_points(int n) {
  std::vector<Point> pts(5);
  for (auto& p : pts) p.coords.assign(static_cast<std::size_t>(n), Rational(0));
  pts[0].coords[1] = 1;
  for (int i = 0; i < n; ++i) {
    pts[1].coords[static_cast<std::size_t>(i)] = 1;
    pts[2].coords[static_cast<std::size_t>(i)] = (i % 2 == 0) ? 1 : -1;
    pts[3].coords[static_cast<std::size_t>(i)] = rat(1, i + 2);
    pts[4].coords[static_cast<std::size_t>(i)] = i + 1;
  }
  return pts;
}

inline RoterParams to_params(const CaseConfig& c) {
  RoterParams p;
  p.n = c.n;
  p.f = MultiPoly(c.n);
  for (std::size_t d = 0; d < c.f_coeffs.size(); ++d)
    if (c.f_coeffs[d] != 0)
      p.f += MultiPoly::monomial(c.n, 1, static_cast<int>(d), c.f_coeffs[d]);
  p.G = c.G;
  p.A = c.A;
  return p;
}

namespace detail {

inline Rational parse_rational_field(const Json& v, const std::string& where) {
  if (v.is_number_integer())
    return Rational(static_cast<long>(v.get<long long>()));
  if (v.is_string()) {
    auto r = parse_rational(v.get<std::string>());
    if (r) return *r;
  }
  throw ParseError(where + ": expected integer or \"p/q\" string, got " +
                   v.dump());
}

inline RationalMatrix parse_matrix(const Json& rows, int m,
                                   const std::string& where) {
  if (!rows.is_array() || static_cast<int>(rows.size()) != m)
    throw ParseError(where + ": expected " + std::to_string(m) + " rows");
  RationalMatrix out(m, m);
  for (int i = 0; i < m; ++i) {
    const Json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != m)
      throw ParseError(where + " row " + std::to_string(i) + ": expected " +
                       std::to_string(m) + " entries");
    for (int j = 0; j < m; ++j)
      out(i, j) = parse_rational_field(
          row[static_cast<std::size_t>(j)],
          where + "[" + std::to_string(i) + "][" + std::to_string(j) + "]");
  }
  return out;
}

}  // namespace detail

inline std::vector<Point> parse_points(const Json& arr, int n,
                                       const std::string& where) {
  if (!arr.is_array() || arr.empty())
    throw ParseError(where + ": expected a nonempty array of points");
  std::vector<Point> pts;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const Json& pj = arr[i];
    if (!pj.is_array() || static_cast<int>(pj.size()) != n)
      throw ParseError(where + " point " + std::to_string(i) +
                       ": expected " + std::to_string(n) + " coordinates");
    Point p;
    for (std::size_t k = 0; k < pj.size(); ++k)
      p.coords.push_back(detail::parse_rational_field(
          pj[k], where + " point " + std::to_string(i)));
    pts.push_back(std::move(p));
  }
  return pts;
}

inline std::vector<CaseConfig> parse_config(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("cases") || !doc["cases"].is_array())
    throw ParseError("config: expected top-level object with a 'cases' array");
  if (doc["cases"].empty()) throw ParseError("config: no cases");

  std::vector<CaseConfig> cases;
  for (const Json& cj : doc["cases"]) {
    CaseConfig c;
    if (!cj.contains("id") || !cj["id"].is_string())
      throw ParseError("case: missing string field 'id'");
    c.id = cj["id"].get<std::string>();
    const std::string where = "case '" + c.id + "'";

    if (!cj.contains("n") || !cj["n"].is_number_integer())
      throw ParseError(where + ": missing integer field 'n'");
    c.n = cj["n"].get<int>();
    if (c.n < 3) throw ParseError(where + ": n must be at least 3");

    if (!cj.contains("f_coeffs") || !cj["f_coeffs"].is_array())
      throw ParseError(where + ": missing array field 'f_coeffs'");
    for (std::size_t d = 0; d < cj["f_coeffs"].size(); ++d)
      c.f_coeffs.push_back(detail::parse_rational_field(
          cj["f_coeffs"][d], where + " f_coeffs[" + std::to_string(d) + "]"));

    if (!cj.contains("G_rows"))
      throw ParseError(where + ": missing field 'G_rows'");
    c.G = detail::parse_matrix(cj["G_rows"], c.n - 2, where + " G_rows");
    if (!cj.contains("A_rows"))
      throw ParseError(where + ": missing field 'A_rows'");
    c.A = detail::parse_matrix(cj["A_rows"], c.n - 2, where + " A_rows");

    if (cj.contains("sample_points"))
      c.sample_points =
          parse_points(cj["sample_points"], c.n, where + " sample_points");
    else
      c.sample_points = default_sample_points(c.n);

    cases.push_back(std::move(c));
  }
  return cases;
}

// ---------------------------------------------------------------------------

struct PointRank {
  Point point;
  int d = 0;
  bool degenerate = false;
};

struct VerificationReport {
  std::string case_id;
  CaseConfig config;
  CheckList checks;
  int d_predicted = 0;  // 0 = rank section not populated
  std::vector<PointRank> d_by_point;

  // overall is FAIL iff any check failed; warnings do not demote it
  CheckStatus overall() const {
    return checks.any_fail() ? CheckStatus::Fail : CheckStatus::Pass;
  }
  bool has_warnings() const { return checks.any_warn(); }
};

/// Everything the generic pipeline derives from a metric, computed once
/// and shared between the verify and rank passes.
struct Pipeline {
  TensorField g, ginv, gamma, riemann_up, riemann_low, ric, weyl;
  MultiPoly scalar;

  explicit Pipeline(const RoterParams& p)
      : g(build_metric(p)),
        ginv(invert_metric(g)),
        gamma(christoffel(g, ginv)),
        riemann_up(0, {}),
        riemann_low(0, {}),
        ric(0, {}),
        weyl(0, {}),
        scalar(p.n) {
    auto [up, low] = riemann(g, gamma);
    riemann_up = std::move(up);
    riemann_low = std::move(low);
    auto [r, s] = ricci_and_scalar(riemann_low, ginv);
    ric = std::move(r);
    scalar = std::move(s);
    weyl = ecslab::weyl(g, riemann_low, ric, scalar);
  }
};

namespace detail {

inline const std::vector<std::string>& verify_check_names() {
  static const std::vector<std::string> names = {
      "det g = -det G (constant)",
      "inverse metric matches closed form",
      "g * ginv = identity",
      "Christoffel symbols match closed forms",
      "R_1lm1 = f g_lm + a_lm",
      "R_11 = (2-n) f",
      "W_1lm1 = a_lm",
      "Riemann symmetries and first Bianchi",
      "second Bianchi identity",
      "Weyl totally trace-free",
      "nabla g = 0",
      "nabla W = 0",
      "scalar curvature s = 0",
      "null parallel: g_nn = 0",
      "null parallel: Gamma^j_in = 0",
      "null parallel: g(d_n,.) = dx^1",
      "null parallel: dx^1 in Olszak kernel",
  };
  return names;
}

inline std::string idx_str(std::span<const int> idx) {
  std::string s = "(";
  for (std::size_t i = 0; i < idx.size(); ++i)
    s += (i ? "," : "") + std::to_string(idx[i] + 1);
  return s + ")";
}

}  // namespace detail

/// The full verification pass of one case: validation, closed-form
/// agreement, structural identities, null-parallel facts.
inline VerificationReport run_verify(const CaseConfig& config,
                                     const Pipeline* pre = nullptr) {
  VerificationReport rep;
  rep.case_id = config.id;
  rep.config = config;

  const RoterParams params = to_params(config);
  CheckList validation = validate(params);
  for (auto& e : validation.entries)
    rep.checks.add("validate: " + e.name, e.status, e.detail);

  if (validation.any_fail()) {
    for (const auto& name : detail::verify_check_names())
      rep.checks.add(name, CheckStatus::Skip, "validation failed");
    return rep;
  }

  const int n = params.n;
  const int m = n - 2;
  std::optional<Pipeline> local_pipe;
  if (!pre) local_pipe.emplace(params);
  const Pipeline& pipe = pre ? *pre : *local_pipe;
  const ClosedForms cf = closed_forms(params);

  // det g = -det G, a constant polynomial
  {
    PolyMatrix gm(static_cast<std::size_t>(n),
                  std::vector<MultiPoly>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) gm[i][j] = pipe.g(i, j);
    const MultiPoly det = poly_det(gm);
    const bool ok = det.is_constant() && !det.is_zero() &&
                    det.constant_value() == -exact_det(params.G);
    rep.checks.add("det g = -det G (constant)", ok,
                   "det g = " + det.to_string());
  }

  // inverse essentials: the closed-form inverse is the full matrix
  {
    TensorField expect(n, {Variance::Upper, Variance::Upper});
    expect(0, n - 1) = MultiPoly::constant(n, 1);
    expect(n - 1, 0) = MultiPoly::constant(n, 1);
    expect(n - 1, n - 1) = -cf.g11;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        expect(i + 1, j + 1) = MultiPoly::constant(n, cf.ginv_block(i, j));
    std::string bad;
    expect.for_each_index([&](std::span<const int> idx, std::size_t flat) {
      if (!(expect.components()[flat] == pipe.ginv.components()[flat]))
        bad += "g^" + detail::idx_str(idx) + " ";
    });
    rep.checks.add("inverse metric matches closed form", bad.empty(),
                   "mismatch at " + bad);
  }

  // g * ginv = I as exact polynomial identity
  {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      for (int j = 0; j < n && ok; ++j) {
        MultiPoly acc(n);
        for (int k = 0; k < n; ++k)
          if (!pipe.g(i, k).is_zero() && !pipe.ginv(k, j).is_zero())
            acc += pipe.g(i, k) * pipe.ginv(k, j);
        const MultiPoly expect =
            (i == j) ? MultiPoly::constant(n, 1) : MultiPoly(n);
        if (!(acc == expect)) ok = false;
      }
    rep.checks.add("g * ginv = identity", ok);
  }

  // Christoffel closed forms
  {
    std::string bad;
    for (int l = 0; l < m; ++l)
      if (!(pipe.gamma(l + 1, 0, 0) == cf.gamma_block_11[l]))
        bad += "Gamma^" + std::to_string(l + 2) + "_11 ";
    if (!(pipe.gamma(n - 1, 0, 0) == cf.gamma_n_11)) bad += "Gamma^n_11 ";
    for (int l = 0; l < m; ++l)
      if (!(pipe.gamma(n - 1, 0, l + 1) == cf.gamma_n_1block[l]))
        bad += "Gamma^n_1" + std::to_string(l + 2) + " ";
    rep.checks.add("Christoffel symbols match closed forms", bad.empty(),
                   "mismatch at " + bad);
  }

  // curvature closed forms
  {
    std::string bad;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        if (!(pipe.riemann_low(0, i + 1, j + 1, 0) == cf.riemann_1bb1[i][j]))
          bad += "R_1," + std::to_string(i + 2) + "," + std::to_string(j + 2) +
                 ",1 ";
    rep.checks.add("R_1lm1 = f g_lm + a_lm", bad.empty(), "mismatch at " + bad);
  }
  rep.checks.add("R_11 = (2-n) f", pipe.ric(0, 0) == cf.ricci_11,
                 "R_11 = " + pipe.ric(0, 0).to_string());
  {
    std::string bad;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        if (!(pipe.weyl(0, i + 1, j + 1, 0) ==
              MultiPoly::constant(n, cf.weyl_1bb1(i, j))))
          bad += "W_1," + std::to_string(i + 2) + "," + std::to_string(j + 2) +
                 ",1 ";
    rep.checks.add("W_1lm1 = a_lm", bad.empty(), "mismatch at " + bad);
  }

  // Riemann symmetries + first Bianchi, all components
  {
    bool ok = true;
    const auto& r = pipe.riemann_low;
    for (int i = 0; i < n && ok; ++i)
      for (int j = 0; j < n && ok; ++j)
        for (int k = 0; k < n && ok; ++k)
          for (int l = 0; l < n && ok; ++l) {
            if (!(r(i, j, k, l) == -r(j, i, k, l)) ||
                !(r(i, j, k, l) == -r(i, j, l, k)) ||
                !(r(i, j, k, l) == r(k, l, i, j)) ||
                !(r(i, j, k, l) + r(j, k, i, l) + r(k, i, j, l) ==
                  MultiPoly(n)))
              ok = false;
          }
    rep.checks.add("Riemann symmetries and first Bianchi", ok);
  }

  // second Bianchi: full sweep kept to n <= 5 for cost
  if (n <= 5) {
    const TensorField dr = covariant_derivative(pipe.riemann_low, pipe.gamma);
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      for (int j = 0; j < n && ok; ++j)
        for (int k = 0; k < n && ok; ++k)
          for (int l = 0; l < n && ok; ++l)
            for (int mm = 0; mm < n && ok; ++mm)
              if (!(dr(i, j, k, l, mm) + dr(mm, i, k, l, j) +
                        dr(j, mm, k, l, i) ==
                    MultiPoly(n)))
                ok = false;
    rep.checks.add("second Bianchi identity", ok);
  } else {
    rep.checks.add("second Bianchi identity", CheckStatus::Skip,
                   "full sweep run only for n <= 5");
  }

  // Weyl totally trace-free: g^{ik} W_ikjl-type contraction
  {
    bool ok = true;
    for (int j = 0; j < n && ok; ++j)
      for (int l = 0; l < n && ok; ++l) {
        MultiPoly acc(n);
        for (int i = 0; i < n; ++i)
          for (int k = 0; k < n; ++k)
            if (!pipe.ginv(i, k).is_zero() &&
                !pipe.weyl(i, j, k, l).is_zero())
              acc += pipe.ginv(i, k) * pipe.weyl(i, j, k, l);
        if (!acc.is_zero()) ok = false;
      }
    rep.checks.add("Weyl totally trace-free", ok);
  }

  rep.checks.add("nabla g = 0",
                 covariant_derivative(pipe.g, pipe.gamma).is_zero());
  rep.checks.add("nabla W = 0",
                 covariant_derivative(pipe.weyl, pipe.gamma).is_zero());
  rep.checks.add("scalar curvature s = 0", pipe.scalar.is_zero(),
                 "s = " + pipe.scalar.to_string());

  // null-parallel facts
  {
    std::vector<OlszakResult> olszak;
    for (const auto& pt : config.sample_points)
      olszak.push_back(olszak_rank_at(pipe.weyl, pt));
    const NullParallelReport np =
        null_parallel_check(pipe.g, pipe.gamma, olszak);
    rep.checks.add("null parallel: g_nn = 0", np.is_null, np.detail);
    rep.checks.add("null parallel: Gamma^j_in = 0", np.is_parallel, np.detail);
    rep.checks.add("null parallel: g(d_n,.) = dx^1", np.dual_is_dx1,
                   np.detail);
    rep.checks.add("null parallel: dx^1 in Olszak kernel", np.dx1_in_kernel,
                   np.detail);
  }
  return rep;
}

/// The rank pass: predicted d vs the exact kernel dimension at every
/// sample point, plus constancy and the rank-1 structure check.
inline VerificationReport run_rank(const CaseConfig& config,
                                   const Pipeline* pre = nullptr) {
  VerificationReport rep;
  rep.case_id = config.id;
  rep.config = config;

  const RoterParams params = to_params(config);
  CheckList validation = validate(params);
  if (validation.any_fail()) {
    for (auto& e : validation.entries)
      rep.checks.add("validate: " + e.name, e.status, e.detail);
    rep.checks.add("rank dichotomy", CheckStatus::Skip, "validation failed");
    return rep;
  }

  rep.d_predicted = predicted_rank(params);

  std::optional<Pipeline> local_pipe;
  if (!pre) local_pipe.emplace(params);
  const Pipeline& pipe = pre ? *pre : *local_pipe;

  std::vector<OlszakResult> results;
  bool degenerate = false;
  for (const auto& pt : config.sample_points) {
    OlszakResult res = olszak_rank_at(pipe.weyl, pt);
    degenerate = degenerate || res.degenerate;
    rep.d_by_point.push_back({pt, res.d, res.degenerate});
    results.push_back(std::move(res));
  }

  if (degenerate) {
    rep.checks.add("rank dichotomy", CheckStatus::Fail,
                   "conformally flat: W = 0 at a sample point, d undefined");
    return rep;
  }

  bool match = true;
  for (const auto& pr : rep.d_by_point)
    if (pr.d != rep.d_predicted) match = false;
  rep.checks.add(
      "rank dichotomy: computed d matches predicted", match,
      "predicted d = " + std::to_string(rep.d_predicted));

  if (results.size() >= 2) {
    for (auto& e : rank_constancy(results).entries)
      rep.checks.add(e.name, e.status, e.detail);
  }

  if (exact_rank(params.A) == 1 && results.front().d == 2) {
    const auto sr = rank1_kernel_structure(params.A, results.front());
    rep.checks.add("rank-1 kernel structure",
                   sr.outcome == Rank1StructureReport::Outcome::Pass
                       ? CheckStatus::Pass
                       : CheckStatus::Fail,
                   sr.detail);
  } else {
    rep.checks.add("rank-1 kernel structure", CheckStatus::Skip,
                   "applies only when rank A = 1 and d = 2");
  }
  return rep;
}

/// verify + rank for each case, merged per case.
inline std::vector<VerificationReport> run_sweep(
    const std::vector<CaseConfig>& configs) {
  std::vector<VerificationReport> out;
  for (const auto& c : configs) {
    const RoterParams params = to_params(c);
    VerificationReport rep;
    if (validate(params).any_fail()) {
      rep = run_verify(c);
      rep.checks.add("rank dichotomy", CheckStatus::Skip, "validation failed");
    } else {
      Pipeline pipe(params);
      rep = run_verify(c, &pipe);
      VerificationReport rank = run_rank(c, &pipe);
      rep.d_predicted = rank.d_predicted;
      rep.d_by_point = rank.d_by_point;
      for (auto& e : rank.checks.entries)
        rep.checks.entries.push_back(std::move(e));
    }
    out.push_back(std::move(rep));
  }
  return out;
}

// --------------------------- serialization --------------------------------

inline Json point_to_json(const Point& p) {
  Json arr = Json::array();
  for (const auto& c : p.coords) arr.push_back(format_rational(c));
  return arr;
}

inline Json matrix_to_json(const RationalMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back(format_rational(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json report_to_json(const VerificationReport& rep) {
  Json j;
  j["id"] = rep.case_id;
  Json params;
  params["n"] = rep.config.n;
  Json fc = Json::array();
  for (const auto& c : rep.config.f_coeffs) fc.push_back(format_rational(c));
  params["f_coeffs"] = std::move(fc);
  params["G_rows"] = matrix_to_json(rep.config.G);
  params["A_rows"] = matrix_to_json(rep.config.A);
  Json pts = Json::array();
  for (const auto& p : rep.config.sample_points)
    pts.push_back(point_to_json(p));
  params["sample_points"] = std::move(pts);
  j["params"] = std::move(params);

  Json checks = Json::array();
  for (const auto& e : rep.checks.entries) {
    Json c;
    c["name"] = e.name;
    c["status"] = to_string(e.status);
    if (!e.detail.empty()) c["detail"] = e.detail;
    checks.push_back(std::move(c));
  }
  j["checks"] = std::move(checks);

  if (rep.d_predicted != 0) j["d_predicted"] = rep.d_predicted;
  if (!rep.d_by_point.empty()) {
    Json dbp = Json::array();
    for (const auto& pr : rep.d_by_point) {
      Json e;
      e["point"] = point_to_json(pr.point);
      e["d"] = pr.d;
      if (pr.degenerate) e["degenerate"] = true;
      dbp.push_back(std::move(e));
    }
    j["d_by_point"] = std::move(dbp);
  }
  j["overall"] = to_string(rep.overall());
  return j;
}

inline Json aggregate_to_json(const std::vector<VerificationReport>& reps) {
  Json j;
  Json cases = Json::array();
  int pass = 0, fail = 0, warn = 0;
  for (const auto& r : reps) {
    cases.push_back(report_to_json(r));
    if (r.overall() == CheckStatus::Fail)
      ++fail;
    else if (r.has_warnings())
      ++warn;
    else
      ++pass;
  }
  j["cases"] = std::move(cases);
  j["summary"] = Json{{"pass", pass}, {"fail", fail}, {"warn", warn}};
  return j;
}

inline std::string render_report(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace ecslab
