// compop command-line front end. Talks to the library through the C API only.
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "compop/compop.h"

namespace {

using json = nlohmann::ordered_json;

enum Exit { kOk = 0, kDomain = 1, kUsage = 2, kUnresolved = 3 };

struct Config {
  std::string command;
  std::string phi;
  std::string space = "bergman";
  double alpha = 1.0;
  int n = 32;
  std::string out;
  std::string csv;
  unsigned long long seed = 0;
  std::optional<double> threshold;
  int margin = 0;
  std::optional<std::string> grid;
  std::optional<int> points;
  std::optional<double> rmin;
  std::optional<double> rmax;
  std::string lambda = "1";
  std::string witness = "identity";
  std::string oversample = "auto";
  std::string spectrum = "truncation";
  std::string format = "json";
  bool require_prediction = false;
};

class CliFailure {
 public:
  CliFailure(int code, std::string msg) : code_(code), msg_(std::move(msg)) {}
  int code() const { return code_; }
  const std::string& message() const { return msg_; }

 private:
  int code_;
  std::string msg_;
};

int exit_for(compop_status s) {
  switch (s) {
    case COMPOP_OK: return kOk;
    case COMPOP_E_PARSE:
    case COMPOP_E_EMPTY_GRID:
    case COMPOP_E_INVALID_ARGUMENT: return kUsage;
    case COMPOP_E_UNRESOLVED: return kUnresolved;
    default: return kDomain;
  }
}

void check(compop_status s) {
  if (s != COMPOP_OK) {
    throw CliFailure(exit_for(s), std::string(compop_status_name(s)) + ": " + compop_last_error());
  }
}

// Owns a string returned by the library.
struct LibString {
  char* p = nullptr;
  ~LibString() { compop_string_free(p); }
  std::string str() const { return p ? std::string(p) : std::string(); }
};

struct Lft {
  compop_lft* p = nullptr;
  ~Lft() { compop_lft_free(p); }
};

struct Mat {
  compop_matrix* p = nullptr;
  ~Mat() { compop_matrix_free(p); }
};

std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json grid_json(const Config& c) {
  json g = json::object();
  if (c.grid) g["shape"] = *c.grid;
  if (c.points) g["points"] = *c.points;
  if (c.rmin) g["rmin"] = *c.rmin;
  if (c.rmax) g["rmax"] = *c.rmax;
  return g;
}

bool grid_given(const Config& c) { return c.grid || c.points || c.rmin || c.rmax; }

json config_json(const Config& c) {
  json j{{"command", c.command}, {"phi", c.phi},       {"space", c.space}, {"alpha", c.alpha},
         {"n", c.n},             {"seed", c.seed},     {"margin", c.margin}};
  if (c.threshold) j["threshold"] = *c.threshold;
  if (grid_given(c)) j["grid"] = grid_json(c);
  if (c.command == "extcheck") {
    j["lambda"] = c.lambda;
    j["witness"] = c.witness;
    j["oversample"] = c.oversample;
  }
  if (c.command == "extscan") {
    j["spectrum"] = c.spectrum;
    j["require_prediction"] = c.require_prediction;
  }
  if (c.command == "verify") j["oversample"] = c.oversample;
  if (c.command == "matrix") j["format"] = c.format;
  if (!c.out.empty()) j["out"] = c.out;
  return j;
}

void emit(const Config& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw CliFailure(kUsage, "cannot open output file " + c.out);
  f << text << "\n";
}

std::string csv_path(const Config& c) {
  if (!c.csv.empty()) return c.csv;
  if (!c.out.empty()) return c.out + ".grid.csv";
  return {};
}

void write_csv(const std::string& path, const std::string& body) {
  std::ofstream f(path);
  if (!f) throw CliFailure(kUsage, "cannot open CSV file " + path);
  f << body;
}

json report(const Config& c, json result) {
  return json{{"config", config_json(c)}, {"timestamp", utc_timestamp()}, {"result", std::move(result)}};
}

Lft parse_phi(const Config& c) {
  if (c.phi.empty()) throw CliFailure(kUsage, "--phi is required");
  Lft f;
  check(compop_lft_parse(c.phi.c_str(), &f.p));
  return f;
}

std::string grid_options(const Config& c) {
  json o = json::object();
  if (grid_given(c)) {
    o["grid"] = grid_json(c);  // missing fields fall back to the class default
  }
  if (c.threshold) o["threshold"] = *c.threshold;
  return o.dump();
}

int cmd_classify(const Config& c) {
  Lft f = parse_phi(c);
  LibString s;
  check(compop_lft_classify_json(f.p, &s.p));
  emit(c, report(c, json::parse(s.str())).dump(2));
  return kOk;
}

int cmd_matrix(const Config& c) {
  Lft f = parse_phi(c);
  Mat m;
  check(compop_matrix_composition(f.p, c.space.c_str(), c.alpha, static_cast<size_t>(c.n), &m.p));
  LibString s;
  if (c.format == "mm") {
    check(compop_matrix_to_matrix_market(m.p, &s.p));
    emit(c, s.str());
  } else {
    check(compop_matrix_to_json(m.p, &s.p));
    emit(c, report(c, json::parse(s.str())).dump(2));
  }
  return kOk;
}

int cmd_eigs(const Config& c) {
  Lft f = parse_phi(c);
  Mat m;
  check(compop_matrix_composition(f.p, c.space.c_str(), c.alpha, static_cast<size_t>(c.n), &m.p));
  LibString s;
  check(compop_matrix_eigs_json(m.p, &s.p));
  emit(c, report(c, json::parse(s.str())).dump(2));
  return kOk;
}

int oversample_flag(const Config& c) {
  if (c.oversample == "on") return 1;
  if (c.oversample == "off") return 0;
  return -1;
}

int cmd_extcheck(const Config& c) {
  Lft f = parse_phi(c);
  double re = 0.0, im = 0.0;
  check(compop_parse_complex(c.lambda.c_str(), &re, &im));
  LibString s;
  check(compop_extcheck_json(f.p, c.space.c_str(), c.alpha, static_cast<size_t>(c.n), re, im,
                             c.witness.c_str(), static_cast<size_t>(c.margin),
                             c.threshold.value_or(1e-10), oversample_flag(c), &s.p));
  json r = json::parse(s.str());
  const bool pass = r.at("verdict") == "PASS";
  emit(c, report(c, std::move(r)).dump(2));
  return pass ? kOk : kDomain;
}

int cmd_extscan(const Config& c) {
  Lft f = parse_phi(c);
  json o = json::parse(grid_options(c));
  o["spectrum"] = c.spectrum;
  LibString js, csv;
  check(compop_extscan_json(f.p, c.space.c_str(), c.alpha, static_cast<size_t>(c.n), o.dump().c_str(),
                            &js.p, &csv.p));
  json r = json::parse(js.str());
  const std::string path = csv_path(c);
  if (!path.empty()) write_csv(path, csv.str());
  r["csv"] = path.empty() ? json(nullptr) : json(path);
  const bool unresolved = r.at("prediction") == "unresolved";
  emit(c, report(c, std::move(r)).dump(2));
  if (unresolved && c.require_prediction) {
    std::cerr << "compop: no prediction for this symbol/space pair\n";
    return kDomain;
  }
  return kOk;
}

int cmd_verify(const Config& c) {
  Lft f = parse_phi(c);
  json o = json::parse(grid_options(c));
  if (c.oversample != "auto") o["oversample"] = c.oversample == "on";
  LibString js, csv;
  check(compop_verify_json(f.p, c.space.c_str(), c.alpha, static_cast<size_t>(c.n), o.dump().c_str(),
                           &js.p, &csv.p));
  json r = json::parse(js.str());
  const std::string path = csv_path(c);
  if (!path.empty()) write_csv(path, csv.str());
  const bool pass = r.at("all_pass").get<bool>();
  emit(c, report(c, std::move(r)).dump(2));
  return pass ? kOk : kDomain;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"compop: composition operators and extended spectra"};
  app.require_subcommand(1);
  Config c;

  app.add_option("--phi", c.phi, "symbol a,b,c,d of (az+b)/(cz+d)");
  app.add_option("--space", c.space, "hardy | bergman | fock")
      ->check(CLI::IsMember({"hardy", "bergman", "fock"}));
  app.add_option("--alpha", c.alpha, "Fock parameter")->check(CLI::PositiveNumber);
  app.add_option("--n", c.n, "truncation order")->check(CLI::Range(8, 256));
  app.add_option("--out", c.out, "output path (default: standard output)");
  app.add_option("--csv", c.csv, "scan grid CSV path (default: <out>.grid.csv)");
  app.add_option("--seed", c.seed, "seed, echoed into the report");
  app.add_option("--threshold", c.threshold, "residual or Sylvester threshold");
  app.add_option("--margin", c.margin, "rows/columns dropped from the residual block")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--grid", c.grid, "circle | annulus | disk")->check(CLI::IsMember({"circle", "annulus", "disk"}));
  app.add_option("--points", c.points, "grid resolution")->check(CLI::Range(16, 4096));
  app.add_option("--rmin", c.rmin, "inner grid radius");
  app.add_option("--rmax", c.rmax, "outer grid radius");
  app.add_option("--lambda", c.lambda, "candidate extended eigenvalue, e.g. 0.5-2i");
  app.add_option("--witness", c.witness, "intertwiner, e.g. shift:2, qdiff:1, mult:binomial,0.5+3i");
  app.add_option("--oversample", c.oversample, "auto | on | off")->check(CLI::IsMember({"auto", "on", "off"}));
  app.add_option("--spectrum", c.spectrum, "truncation | certified")
      ->check(CLI::IsMember({"truncation", "certified"}));
  app.add_option("--format", c.format, "json | mm")->check(CLI::IsMember({"json", "mm"}));
  app.add_flag("--require-prediction", c.require_prediction, "fail when no prediction exists");

  struct Sub {
    const char* name;
    const char* help;
    int (*run)(const Config&);
  };
  const Sub subs[] = {
      {"classify", "classify the symbol", cmd_classify},
      {"matrix", "truncated composition operator", cmd_matrix},
      {"eigs", "eigenvalues of the truncation", cmd_eigs},
      {"extcheck", "intertwining residual of one witness", cmd_extcheck},
      {"extscan", "scan a grid for extended-eigenvalue candidates", cmd_extscan},
      {"verify", "run the witness suite for the symbol's class", cmd_verify},
  };
  for (const Sub& s : subs) app.add_subcommand(s.name, s.help)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  for (const Sub& s : subs) {
    if (!app.got_subcommand(s.name)) continue;
    c.command = s.name;
    try {
      return s.run(c);
    } catch (const CliFailure& f) {
      std::cerr << "compop " << s.name << ": " << f.message() << "\n";
      return f.code();
    } catch (const nlohmann::json::exception& e) {
      std::cerr << "compop " << s.name << ": " << e.what() << "\n";
      return kUsage;
    }
  }
  return kUsage;
}
