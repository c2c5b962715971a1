#include "compop/io.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

namespace compop {

namespace {

[[noreturn]] void parse_fail(std::string_view text, const std::string& why) {
  throw Error(ErrorCode::ParseError, "cannot parse '" + std::string(text) + "': " + why);
}

double parse_real(std::string_view whole, std::string_view s) {
  if (s.empty()) parse_fail(whole, "empty number");
  std::size_t skip = s.front() == '+' ? 1 : 0;
  double v = 0.0;
  const char* first = s.data() + skip;
  const char* last = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) parse_fail(whole, "bad number '" + std::string(s) + "'");
  if (!std::isfinite(v)) parse_fail(whole, "non-finite value");
  return v;
}

std::string shortest(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc() ? std::string(buf, ptr) : std::to_string(v);
}

}  // namespace

cplx parse_complex(std::string_view text) {
  if (text.empty()) parse_fail(text, "empty literal");
  if (text.find_first_of(" \t") != std::string_view::npos) parse_fail(text, "spaces are not allowed");
  if (text.starts_with("cis(") && text.ends_with(")")) {
    // cis(x) = exp(2 pi i x); x may be a ratio p/q so roots of unity are exact to rounding.
    const std::string_view arg = text.substr(4, text.size() - 5);
    const std::size_t slash = arg.find('/');
    double turns = 0.0;
    if (slash == std::string_view::npos) {
      turns = parse_real(text, arg);
    } else {
      const double den = parse_real(text, arg.substr(slash + 1));
      if (den == 0.0) parse_fail(text, "zero denominator");
      turns = parse_real(text, arg.substr(0, slash)) / den;
    }
    return std::polar(1.0, 2.0 * std::numbers::pi * turns);
  }
  if (text.back() != 'i') return {parse_real(text, text), 0.0};

  const std::string_view body = text.substr(0, text.size() - 1);
  // Split at the last sign that is not the sign of an exponent.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  const std::string_view re_part = split == std::string_view::npos ? std::string_view{} : body.substr(0, split);
  const std::string_view im_part = split == std::string_view::npos ? body : body.substr(split);
  double im = 0.0;
  if (im_part.empty() || im_part == "+") {
    im = 1.0;
  } else if (im_part == "-") {
    im = -1.0;
  } else {
    im = parse_real(text, im_part);
  }
  const double re = re_part.empty() ? 0.0 : parse_real(text, re_part);
  return {re, im};
}

LinearFractionalMap parse_lft(std::string_view text) {
  std::vector<cplx> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = text.find(',', start);
    parts.push_back(parse_complex(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  if (parts.size() != 4) parse_fail(text, "expected four coefficients a,b,c,d");
  return LinearFractionalMap(parts[0], parts[1], parts[2], parts[3]);
}

std::string format_complex(cplx z) {
  const double re = z.real(), im = z.imag();
  if (im == 0.0) return shortest(re);
  std::string ims = im == 1.0 ? "" : im == -1.0 ? "-" : shortest(im);
  if (re == 0.0) return ims + "i";
  if (im > 0.0) ims = "+" + ims;
  return shortest(re) + ims + "i";
}

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  if (j.is_string()) return parse_complex(j.get<std::string>());
  throw Error(ErrorCode::ParseError, "expected [re, im], a number, or a complex literal");
}

json series_to_json(const PowerSeries& p) {
  json out = json::array();
  for (cplx c : p.coeffs()) out.push_back(complex_to_json(c));
  return out;
}

PowerSeries series_from_json(const json& j) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "series must be an array of [re, im]");
  std::vector<cplx> c;
  for (const json& e : j) c.push_back(complex_from_json(e));
  return PowerSeries(std::move(c));
}

json space_to_json(const SpaceSpec& s) {
  json out{{"kind", to_string(s.kind())}};
  if (s.kind() == SpaceKind::Fock) out["alpha"] = s.alpha();
  return out;
}

SpaceSpec space_from_json(const json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "hardy") return SpaceSpec::hardy();
    if (kind == "bergman") return SpaceSpec::bergman();
    if (kind == "fock") return SpaceSpec::fock(j.value("alpha", 1.0));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("space: ") + e.what());
  }
  throw Error(ErrorCode::ParseError, "space kind must be hardy, bergman or fock");
}

json matrix_to_json(const OperatorMatrix& a) {
  json entries = json::array();
  for (std::size_t i = 0; i < a.order(); ++i) {
    for (std::size_t j = 0; j < a.order(); ++j) entries.push_back(complex_to_json(a(i, j)));
  }
  return json{{"space", space_to_json(a.space())},
              {"order", a.order()},
              {"entries", std::move(entries)},
              {"label", a.label()}};
}

OperatorMatrix matrix_from_json(const json& j) {
  try {
    const SpaceSpec space = space_from_json(j.at("space"));
    const std::size_t n = j.at("order").get<std::size_t>();
    const json& e = j.at("entries");
    if (!e.is_array() || e.size() != n * n) {
      throw Error(ErrorCode::DimensionMismatch, "entries must hold order^2 values");
    }
    Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t k = 0; k < n * n; ++k) {
      m(static_cast<Eigen::Index>(k / n), static_cast<Eigen::Index>(k % n)) = complex_from_json(e[k]);
    }
    return OperatorMatrix(space, std::move(m), j.value("label", std::string("A")));
  } catch (const json::exception& ex) {
    throw Error(ErrorCode::ParseError, std::string("matrix: ") + ex.what());
  }
}

std::string matrix_market(const OperatorMatrix& a) {
  std::ostringstream os;
  std::size_t nnz = 0;
  for (std::size_t i = 0; i < a.order(); ++i) {
    for (std::size_t j = 0; j < a.order(); ++j) nnz += a(i, j) != cplx(0.0);
  }
  os << "%%MatrixMarket matrix coordinate complex general\n";
  os << "% " << a.label() << " on " << a.space().describe() << "\n";
  os << a.order() << " " << a.order() << " " << nnz << "\n";
  for (std::size_t j = 0; j < a.order(); ++j) {
    for (std::size_t i = 0; i < a.order(); ++i) {
      const cplx v = a(i, j);
      if (v == cplx(0.0)) continue;
      os << i + 1 << " " << j + 1 << " " << shortest(v.real()) << " " << shortest(v.imag()) << "\n";
    }
  }
  return os.str();
}

json classification_to_json(const LinearFractionalMap& phi) {
  const LftClass cls = classify(phi);
  json fps = json::array();
  for (const ExtendedComplex& p : cls.fixed_points) {
    if (p.is_infinite()) {
      fps.push_back("inf");
    } else {
      fps.push_back(complex_to_json(p.value()));
    }
  }
  const bool self_map = is_self_map_of_disk(phi);
  return json{{"class", to_string(cls.kind)},
              {"fixed_points", std::move(fps)},
              {"multiplier", complex_to_json(cls.multiplier)},
              {"self_map", self_map},
              {"automorphism", self_map && is_automorphism_of_disk(phi)},
              {"fock_symbol", is_fock_symbol(phi)}};
}

json grid_to_json(const GridSpec& g) {
  json out{{"shape", to_string(g.shape)}, {"points", g.points}, {"rmax", g.rmax}};
  if (g.shape == GridShape::Annulus) out["rmin"] = g.rmin;
  return out;
}

json predicted_to_json(const PredictedExt& p) {
  json out{{"kind", to_string(p.kind)}, {"source", p.source}};
  if (p.kind == PredictedExt::Kind::DiscreteCyclic) out["base"] = complex_to_json(p.base);
  if (p.kind == PredictedExt::Kind::AnnulusBounded) {
    out["inner"] = p.inner;
    out["outer"] = p.outer;
  }
  if (p.point_spectrum) {
    out["point_spectrum"] = json{{"description", p.point_spectrum->description},
                                 {"inner", p.point_spectrum->inner},
                                 {"outer", p.point_spectrum->outer},
                                 {"status", "quoted metadata, not asserted for this space"}};
  }
  return out;
}

json scan_to_json(const ExtScanReport& r) {
  json clusters = json::array();
  for (const FlagCluster& c : r.clusters) {
    clusters.push_back(json{{"center", complex_to_json(c.center)}, {"size", c.size}});
  }
  json probes = json::array();
  for (const WitnessProbe& p : r.probes) {
    probes.push_back(json{{"lambda", complex_to_json(p.lambda)},
                          {"witness", p.witness},
                          {"residual", p.residual},
                          {"threshold", p.threshold},
                          {"flagged", p.flagged()}});
  }
  json ratios = json::array();
  for (cplx z : r.ratios) ratios.push_back(complex_to_json(z));
  json notes = json::array();
  for (const std::string& s : r.notes) notes.push_back(s);
  json out{{"label", r.label},
           {"grid", grid_to_json(r.grid)},
           {"nodes", r.candidates.size()},
           {"spectrum_source", r.spectrum_source},
           {"conditioning", r.conditioning},
           {"sylvester_evaluated", r.sylvester_evaluated},
           {"sylvester_threshold", r.sylvester_threshold},
           {"flagged_count", r.flagged_count()},
           {"clusters", std::move(clusters)},
           {"probes", std::move(probes)},
           {"ratio_count", r.ratios.size()},
           {"ratios", std::move(ratios)},
           {"notes", std::move(notes)}};
  out["predicted"] = r.predicted ? predicted_to_json(*r.predicted) : json(nullptr);
  return out;
}

std::string scan_csv(const ExtScanReport& r) {
  std::ostringstream os;
  os << "re,im,ratio_distance,sylvester_min_sv,flagged\n";
  for (const ExtCandidate& c : r.candidates) {
    os << shortest(c.lambda.real()) << "," << shortest(c.lambda.imag()) << "," << shortest(c.ratio_distance)
       << "," << (c.sylvester_min_sv ? shortest(*c.sylvester_min_sv) : std::string()) << ","
       << (c.flagged ? 1 : 0) << "\n";
  }
  return os.str();
}

json extcheck_to_json(const ExtCheckResult& r) {
  return json{{"witness", r.witness.text()},
              {"lambda", complex_to_json(r.lambda)},
              {"order", r.order},
              {"margin", r.margin},
              {"working_order", r.working_order},
              {"residual", r.residual},
              {"threshold", r.threshold},
              {"verdict", r.pass ? "PASS" : "FAIL"}};
}

json verify_to_json(const VerifyReport& r) {
  json rows = json::array();
  for (const VerifyRow& row : r.rows) {
    rows.push_back(json{{"theorem", row.theorem},
                        {"check", row.check},
                        {"witness", row.witness},
                        {"lambda", complex_to_json(row.lambda)},
                        {"margin", row.margin},
                        {"working_order", row.working_order},
                        {"value", row.value},
                        {"threshold", row.threshold},
                        {"verdict", row.pass ? "PASS" : "FAIL"}});
  }
  return json{{"class", to_string(r.kind)},
              {"family", r.family},
              {"space", space_to_json(r.space)},
              {"order", r.order},
              {"rows", std::move(rows)},
              {"all_pass", r.all_pass()},
              {"scan", scan_to_json(r.scan)}};
}

json lemma_to_json(const LemmaReport& r) {
  json checks = json::array();
  for (const LemmaCheck& c : r.checks) {
    checks.push_back(json{{"name", c.name},
                          {"pass", c.pass},
                          {"measure", c.measure},
                          {"tolerance", c.tolerance},
                          {"detail", c.detail}});
  }
  return json{{"checks", std::move(checks)}, {"all_pass", r.all_pass()}};
}

}  // namespace compop
