// dcx — exact symbolic toolkit for the differential complexes of the
// Heisenberg, Engel, Grushin and Martinet distributions.
//
// Exit codes: 0 success, 1 mathematical check failure, 2 usage/input error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "dcx/cohomology.hpp"
#include "dcx/complex_spec.hpp"
#include "dcx/derive.hpp"
#include "dcx/frame.hpp"
#include "dcx/io.hpp"

namespace {

using dcx::Json;

constexpr int kSchemaVersion = 1;

struct Output {
  std::string format = "text";  // text | records | csv (cohomology only)
  std::string path;             // empty: stdout

  void emit(const std::string& text, const Json& records) const {
    std::string payload;
    if (format == "records") {
      payload = records.dump(2) + "\n";
    } else {
      payload = text;
    }
    if (path.empty()) {
      std::cout << payload;
    } else {
      std::ofstream out(path);
      if (!out) throw std::invalid_argument("cannot write " + path);
      out << payload;
    }
  }
};

Json records_header(const std::string& command) {
  Json j;
  j["version"] = kSchemaVersion;
  j["command"] = command;
  return j;
}

std::string poly_str(const dcx::Polynomial& p, const std::vector<std::string>& names) {
  return p.str(names);
}

// ---------------------------------------------------------------- verify --

int run_verify_frame(const std::string& name, std::ostream& text, Json& rec, bool& ok) {
  const dcx::Frame& f = dcx::frame_registry(name);
  dcx::BracketReport br = dcx::verify_brackets(f);
  text << "frame " << name << ": bracket table\n";
  Json checks = Json::array();
  for (const auto& ch : br.checks) {
    text << "  [" << ch.lhs << "," << ch.rhs << "] = "
         << (ch.expected == "0" ? "0" : ch.expected) << "  ("
         << ch.actual.str(f.variables) << ")  " << (ch.pass ? "ok" : "FAIL") << "\n";
    checks.push_back({{"lhs", ch.lhs},
                      {"rhs", ch.rhs},
                      {"expected", ch.expected},
                      {"actual", dcx::diffop_to_json(ch.actual)},
                      {"pass", ch.pass}});
  }
  bool coframe_ok = true;
  if (f.coframe) {
    coframe_ok = dcx::verify_coframe(f);
    text << "  coframe duality/structure: " << (coframe_ok ? "ok" : "FAIL") << "\n";
  }
  std::vector<dcx::Rational> generic(f.nvars(), 1);
  std::size_t closure = dcx::bracket_closure_span_dim(f, generic);
  bool generating = closure == f.nvars();
  text << "  bracket generating at generic point: span " << closure << "/" << f.nvars() << " "
       << (generating ? "ok" : "FAIL") << "\n";
  text << "  degenerate locus: " << f.degenerate_desc << "\n";
  bool frame_ok = br.pass && coframe_ok && generating;
  rec["frames"].push_back({{"name", name},
                           {"brackets", std::move(checks)},
                           {"coframe_ok", coframe_ok},
                           {"bracket_generating", generating},
                           {"degenerate_locus", f.degenerate_desc},
                           {"pass", frame_ok}});
  ok = ok && frame_ok;
  return 0;
}

int run_verify_complex(const std::string& name, std::ostream& text, Json& rec, bool& ok) {
  const dcx::DiffComplex& c = dcx::complex_registry(name);
  dcx::ComposeReport cr = dcx::verify_complex(c);
  dcx::HomogeneityReport hr = dcx::verify_homogeneity(c);
  text << "complex " << name << ": " << cr.pairs_checked << " compositions checked, "
       << (cr.pass ? "all zero" : "NONZERO COMPOSITION") << "; homogeneity "
       << (hr.pass ? "ok" : "FAIL") << "\n";
  Json fails = Json::array();
  for (const auto& fl : cr.failures) {
    text << "  nonzero composition at pair " << fl.pair << " entry (" << fl.row << "," << fl.col
         << "): " << fl.value.str(c.variables) << "\n";
    fails.push_back({{"pair", fl.pair},
                     {"row", fl.row},
                     {"col", fl.col},
                     {"value", dcx::diffop_to_json(fl.value)}});
  }
  for (const auto& e : hr.entries) {
    if (e.pass) continue;
    text << "  homogeneity failure at differential " << e.diff << " entry (" << e.row << ","
         << e.col << "): required weight " << e.required << "\n";
  }
  bool complex_ok = cr.pass && hr.pass;
  rec["complexes"].push_back({{"name", name},
                              {"compositions_checked", cr.pairs_checked},
                              {"compose_pass", cr.pass},
                              {"composition_failures", std::move(fails)},
                              {"homogeneity_pass", hr.pass},
                              {"pass", complex_ok}});
  ok = ok && complex_ok;
  return 0;
}

// Seeded round-trip property: f random, (a,b) = (Xf, Yf) must be integrable
// and recovered by the solver up to an additive constant with zero constants.
bool run_roundtrip(const std::string& name, unsigned cases, unsigned seed, std::ostream& text,
                   Json& rec) {
  const dcx::DiffComplex& c = dcx::complex_registry(name);
  const dcx::Frame& fr = dcx::frame_registry(name);
  std::mt19937_64 rng(seed);
  auto monos = dcx::monomials_up_to_weighted_degree(c.nvars(), c.weights, 8);
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<std::size_t> pick(0, monos.size() - 1);
  std::uniform_int_distribution<int> den(1, 4);
  std::uniform_int_distribution<int> nterms(1, 6);

  unsigned passed = 0;
  for (unsigned i = 0; i < cases; ++i) {
    dcx::Polynomial f(c.nvars());
    int k = nterms(rng);
    for (int t = 0; t < k; ++t) {
      int n = num(rng);
      if (n == 0) n = 1;
      f.add_term(monos[pick(rng)], dcx::Rational(n) / den(rng));
    }
    dcx::Polynomial a = fr.field("X").apply(f);
    dcx::Polynomial b = fr.field("Y").apply(f);
    dcx::SolveResult sol = dcx::solve_potential(name, a, b);
    bool good = sol.ok;
    if (good) {
      dcx::Polynomial diff = sol.potential.comps[0] - f;
      good = diff.is_constant();
      for (const auto& [cname, val] : sol.constants) good = good && val == 0;
    }
    if (good) ++passed;
  }
  text << "roundtrip " << name << ": " << passed << "/" << cases << " recovered (seed " << seed
       << ")\n";
  rec["roundtrip"].push_back(
      {{"complex", name}, {"cases", cases}, {"seed", seed}, {"passed", passed}});
  return passed == cases;
}

// ------------------------------------------------------------- cohomology --

int cmd_cohomology(const std::string& name, long max_degree, const Output& out) {
  const dcx::DiffComplex& c = dcx::complex_registry(name);
  dcx::CohomologyReport rep = dcx::cohomology(c, max_degree);

  std::ostringstream text;
  std::ostringstream csv;
  text << "graded cohomology of " << name << " up to weighted degree " << max_degree << "\n";
  text << "degree";
  csv << "degree";
  for (std::size_t s = 0; s < c.nslots(); ++s) {
    text << "  H^" << s;
    csv << ",slot" << s;
  }
  text << "\n";
  csv << "\n";
  for (long g = 0; g <= max_degree; ++g) {
    text << "  " << g << "   ";
    csv << g;
    for (std::size_t s = 0; s < c.nslots(); ++s) {
      text << "  " << rep.per_degree[g][s].h;
      csv << "," << rep.per_degree[g][s].h;
    }
    text << "\n";
    csv << "\n";
  }
  text << "totals";
  csv << "total";
  for (std::size_t s = 0; s < c.nslots(); ++s) {
    text << "  " << rep.totals[s];
    csv << "," << rep.totals[s];
  }
  text << "\n";
  csv << "\n";

  Json rec = records_header("cohomology");
  rec["complex"] = name;
  rec["max_degree"] = max_degree;
  Json table = Json::array();
  Json reps = Json::array();
  for (long g = 0; g <= max_degree; ++g) {
    Json row;
    row["degree"] = g;
    Json slots = Json::array();
    for (std::size_t s = 0; s < c.nslots(); ++s) {
      const auto& d = rep.per_degree[g][s];
      slots.push_back({{"dim", d.dim}, {"kernel", d.kernel}, {"image", d.image}, {"h", d.h}});
      for (const auto& r : d.reps) {
        Json comps = Json::array();
        for (const auto& p : r.comps) comps.push_back(dcx::poly_to_json(p));
        reps.push_back({{"slot", s}, {"degree", g}, {"cocycle", std::move(comps)}});
        text << "  representative (slot " << s << ", degree " << g << "): (";
        for (std::size_t j = 0; j < r.comps.size(); ++j)
          text << (j ? ", " : "") << poly_str(r.comps[j], c.variables);
        text << ")\n";
      }
    }
    row["slots"] = std::move(slots);
    table.push_back(std::move(row));
  }
  rec["table"] = std::move(table);
  rec["totals"] = rep.totals;
  rec["representatives"] = std::move(reps);

  if (out.format == "csv") {
    Output csv_out = out;
    csv_out.format = "text";
    csv_out.emit(csv.str(), rec);
  } else {
    out.emit(text.str(), rec);
  }
  return 0;
}

// ------------------------------------------------------------------ solve --

int cmd_solve(const std::string& name, const std::string& a_path, const std::string& b_path,
              std::size_t level, const Output& out) {
  const dcx::DiffComplex& c = dcx::complex_registry(name);
  dcx::Polynomial a = dcx::load_pjson(a_path, c.nvars());
  dcx::Polynomial b = dcx::load_pjson(b_path, c.nvars());
  dcx::SolveResult sol = dcx::solve_potential(name, a, b, level);

  std::ostringstream text;
  Json rec = records_header("solve");
  rec["complex"] = name;
  rec["level"] = level;
  rec["a"] = dcx::poly_to_json(a);
  rec["b"] = dcx::poly_to_json(b);
  rec["integrable"] = sol.ok;

  if (!sol.ok) {
    text << "integrability conditions fail:\n";
    Json conds = Json::array();
    for (const auto& cv : sol.integrability.conditions) {
      text << "  " << cv.display << ": lhs = " << poly_str(cv.lhs, c.variables)
           << ", rhs = " << poly_str(cv.rhs, c.variables)
           << ", residual = " << poly_str(cv.defect, c.variables) << (cv.pass ? " (ok)" : "")
           << "\n";
      conds.push_back({{"display", cv.display},
                       {"lhs", dcx::poly_to_json(cv.lhs)},
                       {"rhs", dcx::poly_to_json(cv.rhs)},
                       {"residual", dcx::poly_to_json(cv.defect)},
                       {"pass", cv.pass}});
    }
    if (sol.integrability.conditions.empty()) {
      Json resid = Json::array();
      for (const auto& p : sol.integrability.residual) {
        text << "  residual: " << poly_str(p, c.variables) << "\n";
        resid.push_back(dcx::poly_to_json(p));
      }
      rec["residual"] = std::move(resid);
    }
    rec["conditions"] = std::move(conds);
    out.emit(text.str(), rec);
    return 1;
  }

  const char* potential_names[] = {"f", "g"};
  text << "solution:\n";
  Json pot = Json::array();
  for (std::size_t j = 0; j < sol.potential.comps.size(); ++j) {
    text << "  " << (sol.potential.comps.size() == 1 ? "f" : potential_names[j % 2]) << " = "
         << poly_str(sol.potential.comps[j], c.variables) << "\n";
    pot.push_back(dcx::poly_to_json(sol.potential.comps[j]));
  }
  Json consts;
  for (const auto& [cname, val] : sol.constants) {
    text << "  " << cname << " = " << dcx::rational_str(val) << "\n";
    consts[cname] = dcx::rational_str(val);
  }
  rec["potential"] = std::move(pot);
  rec["constants"] = std::move(consts);

  // Substitution certificate: D(u) - affine term - input must vanish.
  std::vector<dcx::Polynomial> image = c.diffs[level - 1].apply(sol.potential.comps);
  bool cert = true;
  {
    dcx::Cochain v;
    v.comps = {a, b};
    dcx::SplitResult split = dcx::split_cocycle(c, level, v);
    cert = split.reconstructed;
  }
  text << "  substitution certificate: " << (cert ? "exact" : "FAILED") << "\n";
  rec["certificate"] = cert;
  (void)image;
  out.emit(text.str(), rec);
  return cert ? 0 : 1;
}

// ----------------------------------------------------------------- derive --

int cmd_derive(const std::string& target, const Output& out) {
  dcx::DeriveResult res = dcx::derive_complex(target);
  std::ostringstream text;
  text << "derived " << target << " by cancellation from the de Rham complex\n";
  for (const auto& st : res.steps) {
    text << "  cancelled slot " << st.slot << " components {";
    for (std::size_t i = 0; i < st.src_labels.size(); ++i)
      text << (i ? ", " : "") << st.src_labels[i];
    text << "} against slot " << st.slot + 1 << " components {";
    for (std::size_t i = 0; i < st.dst_labels.size(); ++i)
      text << (i ? ", " : "") << st.dst_labels[i];
    text << "}\n";
  }
  text << "  slots:";
  for (const auto& slot : res.complex.slots) text << " " << slot.size();
  text << "\n  components:";
  for (const auto& slot : res.complex.slots)
    for (const auto& comp : slot) text << " " << comp.label << "(+" << comp.offset << ")";
  text << "\n";
  text << "  comparison with registry " << res.registry_name << ": "
       << (res.exact ? "matches registry: exact" : "differences found") << "\n";
  for (const auto& d : res.differences)
    text << "    differential " << d.diff << " entry (" << d.row << "," << d.col
         << "): " << d.relation << "\n";

  Json rec = records_header("derive");
  rec["target"] = target;
  Json steps = Json::array();
  for (const auto& st : res.steps) {
    steps.push_back({{"slot", st.slot},
                     {"cancelled_source", st.src_labels},
                     {"cancelled_target", st.dst_labels},
                     {"alpha", dcx::opmatrix_to_json(st.alpha)},
                     {"alpha_inverse", dcx::opmatrix_to_json(st.alpha_inv)}});
  }
  rec["steps"] = std::move(steps);
  rec["complex"] = dcx::complex_to_json(res.complex);
  rec["exact_match"] = res.exact;
  Json diffs = Json::array();
  for (const auto& d : res.differences)
    diffs.push_back({{"differential", d.diff}, {"row", d.row}, {"col", d.col}, {"relation", d.relation}});
  rec["differences"] = std::move(diffs);
  out.emit(text.str(), rec);
  return 0;
}

// ----------------------------------------------------------------- reduce --

int cmd_reduce(const std::string& from, const std::vector<std::string>& kill,
               const std::string& compare, const Output& out) {
  const dcx::DiffComplex& src = dcx::complex_registry(from);
  dcx::DiffComplex red = dcx::symmetry_reduce(src, kill);

  std::ostringstream text;
  text << "reduced " << from << " killing {";
  for (std::size_t i = 0; i < kill.size(); ++i) text << (i ? ", " : "") << kill[i];
  text << "}: variables (";
  for (std::size_t i = 0; i < red.variables.size(); ++i)
    text << (i ? ", " : "") << red.variables[i];
  text << ")\n";

  Json rec = records_header("reduce");
  rec["from"] = from;
  rec["kill"] = kill;
  rec["complex"] = dcx::complex_to_json(red);

  int status = 0;
  if (!compare.empty()) {
    const dcx::DiffComplex& target = dcx::complex_registry(compare);
    bool same = dcx::same_complex(red, target);
    text << "comparison with " << compare << ": " << (same ? "identical" : "DIFFERENT") << "\n";
    if (!same) {
      for (std::size_t k = 0; k < std::min(red.diffs.size(), target.diffs.size()); ++k)
        if (!(red.diffs[k] == target.diffs[k]))
          text << "  differential " << k << " differs\n";
      status = 1;
    }
    rec["compare"] = compare;
    rec["identical"] = same;
  }
  out.emit(text.str(), rec);
  return status;
}

// ----------------------------------------------------------------- frames --

int cmd_frames(const std::vector<std::string>& names, const Output& out) {
  std::ostringstream text;
  Json rec = records_header("frames");
  rec["frames"] = Json::array();
  bool ok = true;
  for (const auto& name : names) {
    run_verify_frame(name, text, rec, ok);
    const dcx::Frame& f = dcx::frame_registry(name);
    text << "  variables:";
    for (std::size_t i = 0; i < f.nvars(); ++i)
      text << " " << f.variables[i] << "(w=" << f.weights[i] << ")";
    text << "\n  fields:\n";
    for (const auto& fname : f.field_names)
      text << "    " << fname << " = " << f.field(fname).str(f.variables) << "\n";
  }
  out.emit(text.str(), rec);
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact differential-complex toolkit for Grushin/Martinet/Heisenberg/Engel distributions"};
  app.require_subcommand(1);

  std::string format = "text", out_path;
  app.add_option("--format", format, "output format: text|records|csv")->capture_default_str();
  app.add_option("--out", out_path, "write output to a file instead of stdout");

  // verify
  auto* verify = app.add_subcommand("verify", "verify bracket tables, complexes, homogeneity");
  std::string v_complex, v_frame, v_roundtrip;
  bool v_all = false;
  unsigned v_cases = 100, v_seed = 0;
  verify->add_option("--complex", v_complex, "registry complex to verify");
  verify->add_option("--frame", v_frame, "registry frame to verify");
  verify->add_flag("--all", v_all, "verify every registered frame and complex");
  verify->add_option("--roundtrip", v_roundtrip, "run the seeded solver round-trip property");
  verify->add_option("--cases", v_cases, "round-trip case count")->capture_default_str();
  verify->add_option("--seed", v_seed, "round-trip RNG seed")->capture_default_str();

  // cohomology
  auto* coh = app.add_subcommand("cohomology", "graded polynomial cohomology table");
  std::string c_complex;
  long c_maxdeg = 12;
  coh->add_option("--complex", c_complex, "registry complex")->required();
  coh->add_option("--max-degree", c_maxdeg, "maximum weighted degree")->capture_default_str();

  // solve
  auto* solve = app.add_subcommand("solve", "solve the integrability system for a potential");
  std::string s_complex, s_a, s_b;
  std::size_t s_level = 1;
  solve->add_option("--complex", s_complex, "grushin1|martinet|grushin2")->required();
  solve->add_option("--a", s_a, "first input polynomial (.pjson)")->required();
  solve->add_option("--b", s_b, "second input polynomial (.pjson)")->required();
  solve->add_option("--level", s_level, "1: Xf=a,Yf=..+b; 2: second-level system")
      ->capture_default_str();

  // derive
  auto* derive = app.add_subcommand("derive", "derive a complex from de Rham by cancellation");
  std::string d_target;
  derive->add_option("--target", d_target, "rumin|engel")->required();

  // reduce
  auto* reduce = app.add_subcommand("reduce", "symmetry-reduce a complex");
  std::string r_from, r_compare;
  std::vector<std::string> r_kill;
  reduce->add_option("--from", r_from, "source registry complex")->required();
  reduce->add_option("--kill", r_kill, "variables to kill")->required()->delimiter(',');
  reduce->add_option("--compare", r_compare, "registry complex to compare against");

  // frames
  auto* frames = app.add_subcommand("frames", "print frame fields, brackets and loci");
  std::string f_name;
  bool f_all = false;
  frames->add_option("--name", f_name, "frame name");
  frames->add_flag("--all", f_all, "all registered frames");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  Output out{format, out_path};
  try {
    if (*verify) {
      std::ostringstream text;
      Json rec = records_header("verify");
      rec["frames"] = Json::array();
      rec["complexes"] = Json::array();
      rec["roundtrip"] = Json::array();
      bool ok = true;
      if (!v_roundtrip.empty()) {
        ok = run_roundtrip(v_roundtrip, v_cases, v_seed, text, rec) && ok;
      } else if (v_all) {
        for (const auto& n : dcx::frame_names()) run_verify_frame(n, text, rec, ok);
        for (const auto& n : dcx::complex_names()) run_verify_complex(n, text, rec, ok);
      } else if (!v_frame.empty()) {
        run_verify_frame(v_frame, text, rec, ok);
      } else if (!v_complex.empty()) {
        run_verify_complex(v_complex, text, rec, ok);
      } else {
        std::cerr << "verify: pass --complex, --frame, --all or --roundtrip\n";
        return 2;
      }
      rec["pass"] = ok;
      text << (ok ? "PASS" : "FAIL") << "\n";
      out.emit(text.str(), rec);
      return ok ? 0 : 1;
    }
    if (*coh) return cmd_cohomology(c_complex, c_maxdeg, out);
    if (*solve) return cmd_solve(s_complex, s_a, s_b, s_level, out);
    if (*derive) return cmd_derive(d_target, out);
    if (*reduce) return cmd_reduce(r_from, r_kill, r_compare, out);
    if (*frames) {
      std::vector<std::string> names;
      if (f_all)
        names = dcx::frame_names();
      else if (!f_name.empty())
        names.push_back(f_name);
      else {
        std::cerr << "frames: pass --name or --all\n";
        return 2;
      }
      return cmd_frames(names, out);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
