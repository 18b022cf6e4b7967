// calat: discrete centroaffine lattice toolkit.
//
// Subcommands: synth, extract, check_compat, analyze, export, example.
// Data goes to -o FILE or standard output; diagnostics go to standard error.
// Exit codes: 0 success, 1 usage or parse error, 2 validation/compatibility
// failure, 3 numerical singularity.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "calat/calat.hpp"

namespace {

using calat::json;

enum class Backend { exact, floating };

struct Options {
  Backend backend = Backend::exact;
  double tol = 1e-9;
  std::string coeffs_path, lattice_path, tzitzeica_path, config_path;
  std::string example_name;
  std::string out_path;
  std::string csv_path;
  std::string format = "obj";
  int digits = 17;
  std::vector<int> window;          // imin imax jmin jmax
  std::vector<std::string> frame;   // 9 scalars, column-major
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw calat::ParseError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw calat::ParseError("JSON parse error in '" + path + "': " + e.what());
  }
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw calat::Error("cannot write '" + path + "'");
  out << content;
}

template <class S>
calat::Tolerance tolerance(const Options& o) {
  return calat::Tolerance{o.tol};
}

template <class S>
calat::Frame<S> parse_frame(const std::vector<std::string>& words) {
  using T = calat::scalar_traits<S>;
  if (words.empty()) return calat::Frame<S>::canonical();
  if (words.size() == 1 && words[0] == "canonical") return calat::Frame<S>::canonical();
  if (words.size() != 9)
    throw calat::ParseError("--frame expects 'canonical' or 9 scalars "
                            "(columns r(0,0), r(1,0), r(0,1))");
  std::array<S, 9> v;
  for (size_t k = 0; k < 9; ++k) v[k] = T::parse(words[k]);
  return {{v[0], v[1], v[2]}, {v[3], v[4], v[5]}, {v[6], v[7], v[8]}, 0, 0};
}

struct CoefficientInput {
  json j;
  bool is_field;
};

CoefficientInput load_coefficients(const json& j) {
  return {j, j.contains("sets")};
}

// ---- synth ------------------------------------------------------------------

template <class S>
int run_synth(const Options& o) {
  calat::Tolerance tol = tolerance<S>(o);
  std::optional<json> coeff_json;
  std::vector<int> window = o.window;
  std::vector<std::string> frame_words = o.frame;

  if (!o.config_path.empty()) {
    json cfg = read_json_file(o.config_path);
    if (!cfg.contains("coefficients"))
      throw calat::ParseError("config: missing 'coefficients'");
    if (cfg["coefficients"].is_string())
      coeff_json = read_json_file(cfg["coefficients"].get<std::string>());
    else
      coeff_json = cfg["coefficients"];
    if (window.empty() && cfg.contains("window"))
      window = cfg["window"].get<std::vector<int>>();
    if (frame_words.empty() && cfg.contains("frame")) {
      const json& fr = cfg["frame"];
      if (fr.is_string()) {
        frame_words = {fr.get<std::string>()};
      } else {
        for (const json& e : fr)
          frame_words.push_back(e.is_string() ? e.get<std::string>() : e.dump());
      }
    }
  } else if (!o.coeffs_path.empty()) {
    coeff_json = read_json_file(o.coeffs_path);
  }

  calat::Frame<S> initial = parse_frame<S>(frame_words);
  calat::LatticeWindow<S> w = [&] {
    if (!o.example_name.empty()) {
      calat::ExampleName name = calat::example_from_string(o.example_name);
      calat::CoefficientSet<S> s = calat::example_coefficients<S>(name);
      calat::ExampleRect r = calat::example_window_rect(name);
      if (window.size() == 4) r = {window[0], window[1], window[2], window[3]};
      return calat::synthesize(s, r.imin, r.imax, r.jmin, r.jmax, initial, tol);
    }
    if (!coeff_json)
      throw calat::ParseError("synth needs --coeffs FILE, --config FILE or --example NAME");
    if (window.size() != 4)
      throw calat::ParseError("synth needs --window imin imax jmin jmax");
    CoefficientInput in = load_coefficients(*coeff_json);
    if (in.is_field) {
      calat::CoefficientField<S> f = calat::field_from_json<S>(in.j);
      // Residual table on the diagnostic stream before giving up.
      bool bad = false;
      for (int i = f.imin(); i < f.imax(); ++i) {
        for (int j = f.jmin(); j < f.jmax(); ++j) {
          calat::CompatResiduals<S> r = calat::scalar_residuals(f, i, j, tol);
          r.for_each([&](const char* name, const S& v) {
            if (!calat::is_zero(v, v, tol)) {
              std::cerr << "residual " << name << " = "
                        << calat::scalar_traits<S>::to_string(v) << " at (" << i << ","
                        << j << ")\n";
              bad = true;
            }
          });
        }
      }
      if (bad)
        throw calat::IncompatibleField("coefficient field fails the compatibility "
                                       "conditions (see residual table above)");
      return calat::synthesize(f, window[0], window[1], window[2], window[3], initial,
                               tol);
    }
    calat::CoefficientSet<S> s = calat::set_from_json<S>(in.j);
    return calat::synthesize(s, window[0], window[1], window[2], window[3], initial,
                             tol);
  }();

  write_output(o.out_path, calat::dump_json(calat::lattice_to_json(w)));
  return 0;
}

// ---- extract ----------------------------------------------------------------

template <class S>
int run_extract(const Options& o) {
  calat::Tolerance tol = tolerance<S>(o);
  if (o.lattice_path.empty()) throw calat::ParseError("extract needs --lattice FILE");
  calat::LatticeWindow<S> w = calat::lattice_from_json<S>(read_json_file(o.lattice_path));

  calat::ValidationReport<S> report = calat::validate_window(w, tol);
  if (!report.ok()) {
    for (const auto& v : report.violations)
      std::cerr << "invalid at (" << v.i << "," << v.j << "): " << to_string(v.condition)
                << "; " << v.determinant << " = "
                << calat::scalar_traits<S>::to_string(v.value) << "\n";
    return 2;
  }

  calat::ExtractionResult<S> ex = calat::extract_field(w, tol);
  for (const calat::FieldWarning& warn : ex.warnings)
    std::cerr << "warning: assumption violated at (" << warn.i << "," << warn.j
              << "): " << warn.clause << "\n";
  write_output(o.out_path, calat::dump_json(calat::field_to_json(ex.field)));
  return 0;
}

// ---- check_compat -----------------------------------------------------------

template <class S>
int run_check_compat(const Options& o) {
  calat::Tolerance tol = tolerance<S>(o);
  json out;
  bool compatible = true;

  if (!o.tzitzeica_path.empty()) {
    calat::TzitzeicaData<S> t =
        calat::tzitzeica_from_json<S>(read_json_file(o.tzitzeica_path));
    json sites = json::array();
    for (int i = t.imin(); i < t.imax(); ++i) {
      for (int j = t.jmin(); j < t.jmax(); ++j) {
        calat::TzitzeicaResiduals<S> r = calat::tzitzeica_residuals(t, i, j, tol);
        json e;
        e["i"] = i;
        e["j"] = j;
        e["rA"] = calat::scalar_to_json(r.rA);
        e["rB"] = calat::scalar_to_json(r.rB);
        e["rH"] = calat::scalar_to_json(r.rH);
        sites.push_back(std::move(e));
        for (const S* v : {&r.rA, &r.rB, &r.rH})
          if (!calat::is_zero(*v, *v, tol)) compatible = false;
      }
    }
    out["system"] = "tzitzeica";
    out["sites"] = std::move(sites);
  } else if (!o.coeffs_path.empty()) {
    CoefficientInput in = load_coefficients(read_json_file(o.coeffs_path));
    if (!in.is_field) {
      calat::CoefficientSet<S> s = calat::set_from_json<S>(in.j);
      out["system"] = "constant";
      bool ok = calat::constant_compatible(s, tol);
      compatible = ok;
      out["affine_sphere"] = calat::is_affine_sphere(s, tol);
      json warns = json::array();
      for (const std::string& cl : calat::assumption_violations(s, tol))
        warns.push_back(cl);
      out["assumption_violations"] = std::move(warns);
    } else {
      calat::CoefficientField<S> f = calat::field_from_json<S>(in.j);
      json sites = json::array();
      for (int i = f.imin(); i < f.imax(); ++i) {
        for (int j = f.jmin(); j < f.jmax(); ++j) {
          calat::CompatResiduals<S> r = calat::scalar_residuals(f, i, j, tol);
          S mres = calat::matrix_residual(f, i, j);
          json e;
          e["i"] = i;
          e["j"] = j;
          r.for_each([&](const char* name, const S& v) {
            e[name] = calat::scalar_to_json(v);
          });
          e["k_value"] = calat::scalar_to_json(r.k_value);
          e["matrix_residual"] = calat::scalar_to_json(mres);
          sites.push_back(std::move(e));
          S worst = r.max_abs();
          if (!calat::is_zero(worst, worst, tol)) compatible = false;
          if (!calat::is_zero(mres, mres, tol)) compatible = false;
        }
      }
      out["system"] = "field";
      out["sites"] = std::move(sites);
    }
  } else {
    throw calat::ParseError("check_compat needs --coeffs FILE or --tzitzeica FILE");
  }

  out["compatible"] = compatible;
  write_output(o.out_path, calat::dump_json(out));
  return compatible ? 0 : 2;
}

// ---- analyze ----------------------------------------------------------------

template <class S>
std::string report_csv(const calat::AnalysisReport<S>& r) {
  using T = calat::scalar_traits<S>;
  std::ostringstream out;
  out << "i,j,lap_x,lap_y,lap_z,harmonic_residual,eigen_s,convexity,star_volume,"
         "tangent_star_volume\n";
  for (const calat::SiteAnalysis<S>& s : r.sites) {
    out << s.i << "," << s.j << "," << T::to_string(s.laplacian.x) << ","
        << T::to_string(s.laplacian.y) << "," << T::to_string(s.laplacian.z) << ","
        << T::to_string(s.harmonic_residual) << ","
        << (s.eigen_s ? T::to_string(*s.eigen_s) : "") << ","
        << to_string(s.convexity) << "," << T::to_string(s.star_volume) << ","
        << T::to_string(s.tangent_star_volume) << "\n";
  }
  return out.str();
}

template <class S>
int run_analyze(const Options& o) {
  using T = calat::scalar_traits<S>;
  calat::Tolerance tol = tolerance<S>(o);
  if (o.lattice_path.empty()) throw calat::ParseError("analyze needs --lattice FILE");
  calat::LatticeWindow<S> w = calat::lattice_from_json<S>(read_json_file(o.lattice_path));
  calat::AnalysisReport<S> report = calat::analyze_window(w, tol);
  std::cerr << "harmonic=" << (report.harmonic ? "true" : "false");
  if (report.eigen_s) std::cerr << " eigen_s=" << T::to_string(*report.eigen_s);
  std::cerr << " convex_everywhere=" << (report.convex_everywhere ? "true" : "false")
            << "\n";
  write_output(o.out_path, calat::dump_json(calat::report_to_json(report)));
  if (!o.csv_path.empty()) write_output(o.csv_path, report_csv(report));
  return 0;
}

// ---- export -----------------------------------------------------------------

template <class S>
int run_export(const Options& o) {
  if (o.lattice_path.empty()) throw calat::ParseError("export needs --lattice FILE");
  calat::LatticeWindow<S> w = calat::lattice_from_json<S>(read_json_file(o.lattice_path));
  if (o.format == "obj")
    write_output(o.out_path, calat::to_obj(w));
  else if (o.format == "off")
    write_output(o.out_path, calat::to_off(w, o.digits));
  else
    throw calat::ParseError("unknown format '" + o.format + "' (obj or off)");
  return 0;
}

// ---- example ----------------------------------------------------------------

template <class S>
int run_example(const Options& o) {
  if (o.example_name.empty()) throw calat::ParseError("example needs --example NAME");
  calat::ExampleName name = calat::example_from_string(o.example_name);
  calat::CoefficientSet<S> s = calat::example_coefficients<S>(name);
  calat::ExampleRect r = calat::example_window_rect(name);
  std::cerr << to_string(name) << ": default window [" << r.imin << "," << r.imax
            << "]x[" << r.jmin << "," << r.jmax << "]\n";
  write_output(o.out_path, calat::dump_json(calat::set_to_json(s)));
  return 0;
}

template <class S>
int dispatch(const std::string& command, const Options& o) {
  if (command == "synth") return run_synth<S>(o);
  if (command == "extract") return run_extract<S>(o);
  if (command == "check_compat") return run_check_compat<S>(o);
  if (command == "analyze") return run_analyze<S>(o);
  if (command == "export") return run_export<S>(o);
  if (command == "example") return run_example<S>(o);
  throw calat::Error("unreachable");
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"discrete centroaffine lattice toolkit"};
  app.require_subcommand(1);

  Options o;
  std::string backend_word;
  if (const char* env = std::getenv("CALAT_BACKEND")) backend_word = env;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--backend", backend_word, "scalar backend: exact|float")
        ->check(CLI::IsMember({"exact", "float"}));
    cmd->add_option("--tol", o.tol, "relative tolerance (float backend)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("-o,--output", o.out_path, "output file (default: stdout)");
    return cmd;
  };

  CLI::App* synth = add_common(app.add_subcommand(
      "synth", "synthesize a lattice window from coefficients"));
  auto* synth_coeffs =
      synth->add_option("--coeffs", o.coeffs_path, "coefficient set or field JSON");
  auto* synth_config =
      synth->add_option("--config", o.config_path, "synthesis config JSON");
  synth->add_option("--example", o.example_name, "built-in example name")
      ->excludes(synth_coeffs)
      ->excludes(synth_config);
  synth_coeffs->excludes(synth_config);
  synth->add_option("--window", o.window, "imin imax jmin jmax")->expected(4);
  synth->add_option("--frame", o.frame,
                    "'canonical' or 9 scalars (columns r(0,0), r(1,0), r(0,1))")
      ->expected(1, 9);

  CLI::App* extract = add_common(app.add_subcommand(
      "extract", "extract the coefficient field of a lattice window"));
  extract->add_option("--lattice", o.lattice_path, "lattice JSON");

  CLI::App* check = add_common(app.add_subcommand(
      "check_compat", "evaluate compatibility residuals of coefficient data"));
  auto* check_coeffs =
      check->add_option("--coeffs", o.coeffs_path, "coefficient set or field JSON");
  check->add_option("--tzitzeica", o.tzitzeica_path, "Tzitzeica H/A/B JSON")
      ->excludes(check_coeffs);

  CLI::App* analyze = add_common(app.add_subcommand(
      "analyze", "Laplacian, harmonicity, convexity and star volumes"));
  analyze->add_option("--lattice", o.lattice_path, "lattice JSON");
  analyze->add_option("--csv", o.csv_path, "also write per-site rows as CSV");

  CLI::App* exportc = add_common(app.add_subcommand(
      "export", "write the triangulated surface as OBJ or OFF"));
  exportc->add_option("--lattice", o.lattice_path, "lattice JSON");
  exportc->add_option("--format", o.format, "obj|off (default obj)");
  exportc->add_option("--digits", o.digits, "significant digits for OFF output")
      ->check(CLI::Range(1, 64));

  CLI::App* example = add_common(app.add_subcommand(
      "example", "write a built-in example's coefficient set"));
  example->add_option("--example", o.example_name, "example name");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e); // prints help or the usage error
    return code == 0 ? 0 : 1;
  }

  if (backend_word == "float")
    o.backend = Backend::floating;
  else if (backend_word == "exact" || backend_word.empty())
    o.backend = Backend::exact;
  else {
    std::cerr << "error: CALAT_BACKEND must be 'exact' or 'float', got '"
              << backend_word << "'\n";
    return 1;
  }

  std::string command;
  for (CLI::App* sub : {synth, extract, check, analyze, exportc, example})
    if (sub->parsed()) command = sub->get_name();

  try {
    if (o.backend == Backend::exact) return dispatch<calat::Rational>(command, o);
    return dispatch<double>(command, o);
  } catch (const calat::ZeroDenominator& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const calat::SingularTransition& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const calat::IncompatibleField& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const calat::AssumptionViolated& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const calat::MissingStencil& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const calat::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const calat::InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
