#include "compop/compop.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "compop/io.hpp"

struct compop_lft {
  compop::LinearFractionalMap map;
};

struct compop_matrix {
  compop::OperatorMatrix op;
};

namespace {

thread_local std::string g_last_error;

static_assert(static_cast<int>(compop::ErrorCode::ParseError) + 1 == COMPOP_E_PARSE,
              "status codes must mirror ErrorCode");

compop_status fail(compop_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

compop_status from_error(const compop::Error& e) {
  return fail(static_cast<compop_status>(static_cast<int>(e.code()) + 1), e.what());
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Runs body() and translates exceptions into status codes.
template <class Body>
compop_status guarded(Body&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const compop::Error& e) {
    return from_error(e);
  } catch (const nlohmann::json::exception& e) {
    return fail(COMPOP_E_PARSE, e.what());
  } catch (const std::bad_alloc&) {
    return fail(COMPOP_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(COMPOP_E_INTERNAL, e.what());
  }
}

compop::SpaceSpec space_of(const char* kind, double alpha) {
  if (kind == nullptr) throw compop::Error(compop::ErrorCode::ParseError, "space is null");
  const std::string k(kind);
  if (k == "hardy") return compop::SpaceSpec::hardy();
  if (k == "bergman") return compop::SpaceSpec::bergman();
  if (k == "fock") return compop::SpaceSpec::fock(alpha);
  throw compop::Error(compop::ErrorCode::ParseError, "space must be hardy, bergman or fock, got '" + k + "'");
}

compop::json parse_options(const char* text) {
  if (text == nullptr || *text == '\0') return compop::json::object();
  compop::json j = compop::json::parse(text);
  if (!j.is_object()) throw compop::Error(compop::ErrorCode::ParseError, "options must be a JSON object");
  return j;
}

// Fields missing from "grid" come from `fallback`, the class's default grid.
std::optional<compop::GridSpec> grid_of(const compop::json& opts, const compop::GridSpec& fallback) {
  if (!opts.contains("grid")) return std::nullopt;
  const compop::json& g = opts.at("grid");
  compop::GridSpec spec = fallback;
  const std::string shape = g.value("shape", std::string(compop::to_string(fallback.shape)));
  if (shape == "circle") {
    spec.shape = compop::GridShape::Circle;
  } else if (shape == "annulus") {
    spec.shape = compop::GridShape::Annulus;
  } else if (shape == "disk") {
    spec.shape = compop::GridShape::Disk;
  } else {
    throw compop::Error(compop::ErrorCode::ParseError, "grid shape must be circle, annulus or disk");
  }
  spec.points = g.value("points", spec.points);
  spec.rmin = g.value("rmin", spec.rmin);
  spec.rmax = g.value("rmax", spec.rmax);
  return spec;
}

}  // namespace

extern "C" {

const char* compop_version(void) { return "0.1.0"; }

const char* compop_status_name(compop_status status) {
  if (status == COMPOP_OK) return "Ok";
  if (status == COMPOP_E_INVALID_ARGUMENT) return "InvalidArgument";
  if (status == COMPOP_E_INTERNAL) return "Internal";
  if (status > COMPOP_OK && status <= COMPOP_E_PARSE) {
    return compop::to_string(static_cast<compop::ErrorCode>(static_cast<int>(status) - 1));
  }
  return "Unknown";
}

const char* compop_last_error(void) { return g_last_error.c_str(); }

void compop_string_free(char* s) { std::free(s); }

compop_status compop_parse_complex(const char* text, double* re, double* im) {
  if (text == nullptr || re == nullptr || im == nullptr) return fail(COMPOP_E_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const compop::cplx z = compop::parse_complex(text);
    *re = z.real();
    *im = z.imag();
    return COMPOP_OK;
  });
}

compop_status compop_lft_parse(const char* text, compop_lft** out) {
  if (text == nullptr || out == nullptr) return fail(COMPOP_E_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    *out = new compop_lft{compop::parse_lft(text)};
    return COMPOP_OK;
  });
}

compop_status compop_lft_new(const double coeffs[8], compop_lft** out) {
  if (coeffs == nullptr || out == nullptr) return fail(COMPOP_E_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    *out = new compop_lft{compop::LinearFractionalMap({coeffs[0], coeffs[1]}, {coeffs[2], coeffs[3]},
                                                      {coeffs[4], coeffs[5]}, {coeffs[6], coeffs[7]})};
    return COMPOP_OK;
  });
}

void compop_lft_free(compop_lft* f) { delete f; }

compop_status compop_lft_classify_json(const compop_lft* f, char** out_json) {
  if (f == nullptr || out_json == nullptr) return fail(COMPOP_E_INVALID_ARGUMENT, "null argument");
  *out_json = nullptr;
  return guarded([&] {
    *out_json = dup_string(compop::classification_to_json(f->map).dump());
    return COMPOP_OK;
  });
}

compop_status compop_matrix_composition(const compop_lft* f, const char* space, double alpha,
                                        size_t order, compop_matrix** out) {
  if (f == nullptr || out == nullptr) return fail(COMPOP_E_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    *out = new compop_matrix{compop::composition_matrix(f->map, space_of(space, alpha), order)};
    return COMPOP_OK;
  });
}

void compop_matrix_free(compop_matrix* m) { delete m; }

compop_status compop_matrix_order(const compop_matrix* m, size_t* order) {
  if (m == nullptr || order == nullptr) return fail(COMPOP_E_INVALID_ARGUMENT, "null argument");
  *order = m->op.order();
  g_last_error.clear();
  return COMPOP_OK;
}

compop_status compop_matrix_entry(const compop_matrix* m, size_t i, size_t j, double* re, double* im) {
  if (m == nullptr || re == nullptr || im == nullptr) return fail(COMPOP_E_INVALID_ARGUMENT, "null argument");
  if (i >= m->op.order() || j >= m->op.order()) return fail(COMPOP_E_INVALID_ARGUMENT, "index out of range");
  const compop::cplx v = m->op(i, j);
  *re = v.real();
  *im = v.imag();
  g_last_error.clear();
  return COMPOP_OK;
}

compop_status compop_matrix_to_json(const compop_matrix* m, char** out_json) {
  if (m == nullptr || out_json == nullptr) return fail(COMPOP_E_INVALID_ARGUMENT, "null argument");
  *out_json = nullptr;
  return guarded([&] {
    *out_json = dup_string(compop::matrix_to_json(m->op).dump());
    return COMPOP_OK;
  });
}

compop_status compop_matrix_to_matrix_market(const compop_matrix* m, char** out_text) {
  if (m == nullptr || out_text == nullptr) return fail(COMPOP_E_INVALID_ARGUMENT, "null argument");
  *out_text = nullptr;
  return guarded([&] {
    *out_text = dup_string(compop::matrix_market(m->op));
    return COMPOP_OK;
  });
}

compop_status compop_matrix_eigs_json(const compop_matrix* m, char** out_json) {
  if (m == nullptr || out_json == nullptr) return fail(COMPOP_E_INVALID_ARGUMENT, "null argument");
  *out_json = nullptr;
  return guarded([&] {
    compop::json ev = compop::json::array();
    const std::vector<compop::cplx> eigs = compop::eigenvalues(m->op.entries());
    for (compop::cplx z : eigs) ev.push_back(compop::complex_to_json(z));
    compop::json out{{"label", m->op.label()}, {"order", m->op.order()}, {"eigenvalues", std::move(ev)}};
    out["ratio_count"] = compop::ratio_set_of(eigs).size();
    *out_json = dup_string(out.dump());
    return COMPOP_OK;
  });
}

compop_status compop_extcheck_json(const compop_lft* f, const char* space, double alpha, size_t order,
                                   double lambda_re, double lambda_im, const char* witness,
                                   size_t margin, double threshold, int oversample, char** out_json) {
  if (f == nullptr || witness == nullptr || out_json == nullptr) {
    return fail(COMPOP_E_INVALID_ARGUMENT, "null argument");
  }
  *out_json = nullptr;
  return guarded([&] {
    std::optional<bool> over;
    if (oversample >= 0) over = oversample != 0;
    const compop::ExtCheckResult r =
        compop::ext_check(f->map, space_of(space, alpha), order, {lambda_re, lambda_im},
                          compop::parse_witness(witness), margin, threshold, over);
    *out_json = dup_string(compop::extcheck_to_json(r).dump());
    return COMPOP_OK;
  });
}

compop_status compop_extscan_json(const compop_lft* f, const char* space, double alpha, size_t order,
                                  const char* options_json, char** out_json, char** out_csv) {
  if (f == nullptr || out_json == nullptr) return fail(COMPOP_E_INVALID_ARGUMENT, "null argument");
  *out_json = nullptr;
  if (out_csv != nullptr) *out_csv = nullptr;
  return guarded([&] {
    const compop::json opts = parse_options(options_json);
    const compop::SpaceSpec sp = space_of(space, alpha);
    const compop::OperatorMatrix a = compop::composition_matrix(f->map, sp, order);
    compop::ExtScanOptions so;
    const compop::GridSpec fallback = compop::default_grid(compop::classify(f->map).kind, sp, f->map);
    so.grid = grid_of(opts, fallback).value_or(fallback);
    so.sylvester_threshold = opts.value("threshold", so.sylvester_threshold);
    if (opts.value("spectrum", std::string("truncation")) == "certified") {
      const std::size_t wide = compop::kOversampleFactor * order;
      so.spectrum = compop::certified_eigenvalues(compop::composition_matrix(f->map, sp, wide), order);
      so.spectrum_source = "certified against order " + std::to_string(wide);
    }
    compop::ExtScanReport rep = compop::ext_scan(a, so);
    std::string status = "ok";
    try {
      rep.predicted = compop::predicted_ext(f->map, sp);
    } catch (const compop::Error& e) {
      if (e.code() != compop::ErrorCode::Unresolved) throw;
      status = "unresolved";
      rep.notes.push_back(e.what());
    }
    compop::json out = compop::scan_to_json(rep);
    out["prediction"] = status;
    *out_json = dup_string(out.dump());
    if (out_csv != nullptr) *out_csv = dup_string(compop::scan_csv(rep));
    return COMPOP_OK;
  });
}

compop_status compop_verify_json(const compop_lft* f, const char* space, double alpha, size_t order,
                                 const char* options_json, char** out_json, char** out_csv) {
  if (f == nullptr || out_json == nullptr) return fail(COMPOP_E_INVALID_ARGUMENT, "null argument");
  *out_json = nullptr;
  if (out_csv != nullptr) *out_csv = nullptr;
  return guarded([&] {
    const compop::json opts = parse_options(options_json);
    compop::VerifyOptions vo;
    const compop::SpaceSpec sp = space_of(space, alpha);
    if (opts.contains("grid")) vo.grid = grid_of(opts, compop::default_grid(compop::classify(f->map).kind, sp, f->map));
    vo.sylvester_threshold = opts.value("threshold", vo.sylvester_threshold);
    if (opts.contains("oversample")) vo.oversample = opts.at("oversample").get<bool>();
    const compop::VerifyReport rep =
        compop::verify_theorem_suite(f->map, sp, order, vo);
    *out_json = dup_string(compop::verify_to_json(rep).dump());
    if (out_csv != nullptr) *out_csv = dup_string(compop::scan_csv(rep.scan));
    return COMPOP_OK;
  });
}

}  // extern "C"
