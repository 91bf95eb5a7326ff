#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "acceptance_checks.hpp"
#include "siegel/json_io.hpp"
#include "siegel/lfun.hpp"
#include "siegel/ordinary.hpp"

using namespace siegel;

namespace {

// Inline JSON when the argument looks like JSON, a file path otherwise.
Json load(const std::string& arg) {
  auto first = arg.find_first_not_of(" \t\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[' || arg[first] == '"' ||
                                     arg[first] == '-' || std::isdigit(static_cast<unsigned char>(arg[first])))) {
    try {
      return Json::parse(arg);
    } catch (const Json::parse_error& e) {
      throw ParseError(std::string("bad inline JSON: ") + e.what());
    }
  }
  return read_json_file(arg);
}

template <class F>
auto field(const Json& j, const char* key, F&& conv) -> decltype(conv(j)) {
  try {
    return conv(j.at(key));
  } catch (const Json::exception& e) {
    throw ParseError(std::string("field '") + key + "': " + e.what());
  }
}

long get_long(const Json& j, const char* key, long def) {
  if (!j.contains(key)) return def;
  return field(j, key, [](const Json& x) { return x.get<long>(); });
}

DirichletChar get_char(const Json& j, const char* key) {
  if (!j.contains(key)) return DirichletChar::trivial(1);
  return char_from_json(j.at(key));
}

EisParams params_from_json(const Json& j) {
  EisParams P;
  P.g = get_long(j, "g", 1);
  P.N = get_long(j, "N", 1);
  P.N1 = get_long(j, "N1", 1);
  P.R = get_long(j, "R", 1);
  P.p = get_long(j, "p", 1);
  P.n = get_long(j, "n", 0);
  P.L = get_long(j, "L", 1);
  P.phi = get_char(j, "phi");
  P.chi1 = get_char(j, "chi1");
  P.chip = get_char(j, "chip");
  P.eps1 = get_char(j, "eps1");
  P.t = get_long(j, "t", 1);
  P.s = get_long(j, "s", 0);
  P.k = get_long(j, "k", P.t + P.g + P.s);
  P.validate();
  return P;
}

Json qexp_to_json(const QExp2& q) {
  Json arr = Json::array();
  for (auto& [key, v] : q.coeffs)
    arr.push_back({{"T1", int_matrix_to_json(key.first)}, {"T4", int_matrix_to_json(key.second)}, {"value", padic_to_json(v)}});
  return {{"bound1", q.bound1}, {"bound2", q.bound2}, {"coeffs", arr}};
}

LinearModel model_from_json(const Json& j) {
  LinearModel M;
  M.p = field(j, "p", [](const Json& x) { return x.get<long>(); });
  M.N = field(j, "precision", [](const Json& x) { return x.get<long>(); });
  const Json& rows = j.at("rows");
  for (auto& row : rows) {
    std::vector<PAdic> r;
    for (auto& x : row) r.push_back(padic_from_json(x, M.p, M.N));
    M.rows.push_back(r);
  }
  if (j.contains("dim") && j.at("dim").get<size_t>() != M.dim()) throw ParseError("dim does not match rows");
  if (j.contains("labels")) M.labels = j.at("labels").get<std::vector<std::string>>();
  return M;
}

Json model_to_json(const LinearModel& M) {
  Json rows = Json::array();
  for (auto& row : M.residues()) {
    Json r = Json::array();
    for (auto& x : row) r.push_back(x.get_str());
    rows.push_back(r);
  }
  Json j{{"p", M.p}, {"precision", M.N}, {"dim", M.dim()}, {"rows", rows}};
  if (!M.labels.empty()) j["labels"] = M.labels;
  return j;
}

SatakeData satake_from_json(const Json& j) {
  SatakeData d;
  d.g = get_long(j, "g", 1);
  d.p = field(j, "p", [](const Json& x) { return x.get<long>(); });
  d.k = field(j, "k", [](const Json& x) { return x.get<long>(); });
  long N = get_long(j, "precision", 8);
  for (auto& b : j.at("beta")) d.beta.push_back(padic_from_json(b, d.p, N));
  d.alpha_p = padic_from_json(j.at("alpha_p"), d.p, N);
  d.phi = get_char(j, "phi");
  if (j.contains("monodromy_nonzero")) d.monodromy_nonzero = j.at("monodromy_nonzero").get<bool>();
  d.validate();
  return d;
}

PSeries series_from_json(const Json& j, long p, long N) {
  PSeries s;
  for (auto& c : j) s.push_back(padic_from_json(c, p, N));
  return s;
}

SatakeFamily family_from_json(const Json& j) {
  SatakeFamily f;
  f.g = field(j, "g", [](const Json& x) { return x.get<long>(); });
  f.p = field(j, "p", [](const Json& x) { return x.get<long>(); });
  f.k0 = get_long(j, "k0", f.g + 1);
  f.N = get_long(j, "precision", 8);
  f.order = field(j, "order", [](const Json& x) { return x.get<size_t>(); });
  for (auto& s : j.at("series")) f.B.push_back(series_from_json(s, f.p, f.N));
  return f;
}

Json series_to_json(const PSeries& s) {
  Json a = Json::array();
  for (auto& c : s) a.push_back(padic_to_json(c));
  return a;
}

HalfIntMat half_int(const std::string& arg) { return HalfIntMat(int_matrix_from_json(load(arg))); }

struct Output {
  std::string path;
  void emit(const Json& j) const {
    std::string s = j.dump(2) + "\n";
    if (path.empty()) {
      std::cout << s;
      return;
    }
    std::ofstream f(path);
    if (!f) throw ParseError("cannot write " + path);
    f << s;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Siegel Eisenstein measures, ordinary projectors and trivial-zero derivatives"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML/INI file with the same keys as the flags");
  Output out;
  app.add_option("-o,--out", out.path, "write JSON here instead of stdout");
  std::function<Json()> job;

  // kl eval
  auto* kl = app.add_subcommand("kl", "Kubota-Leopoldt p-adic L-function");
  kl->require_subcommand(1);
  auto* kl_eval_cmd = kl->add_subcommand("eval", "value at a cyclotomic point [t] times omega^tame");
  long kp = 0, kt = 1, ktame = 0, kprec = 0, keps = 0;
  std::string keta;
  bool literal = false;
  kl_eval_cmd->add_option("--p", kp, "prime")->required();
  kl_eval_cmd->add_option("--t", kt, "integer t")->required();
  kl_eval_cmd->add_option("--tame", ktame, "exponent of omega in the point");
  kl_eval_cmd->add_option("--eps-order", keps, "wild character of order p^j, given j");
  kl_eval_cmd->add_option("--eta", keta, "tame character (JSON or file)");
  kl_eval_cmd->add_option("--prec", kprec, "precision N")->required();
  kl_eval_cmd->add_flag("--literal-euler-factor", literal, "use (1 - psi(p)) in place of (1 - psi(p) p^{t-1})");
  kl_eval_cmd->callback([&] {
    job = [&] {
      ArithPoint pt = ArithPoint::cyclotomic(kt, kp);
      pt.tame = ktame;
      if (keps > 0) pt.eps_u = CycNumber::root(ipow(kp, keps).get_si(), 1);
      DirichletChar eta = keta.empty() ? DirichletChar::trivial(1) : char_from_json(load(keta));
      return Json{{"t", kt}, {"tame", ktame}, {"eta", char_to_json(eta)}, {"value", padic_to_json(kl_eval(pt, eta, kprec, literal))}};
    };
  });

  // gauss
  auto* gauss = app.add_subcommand("gauss", "Gauss sums");
  gauss->require_subcommand(1);
  std::string gchar, gmat;
  long gmod = 0, gL = 1;
  bool closed = false;
  auto* gscalar = gauss->add_subcommand("scalar", "G(chi)");
  gscalar->add_option("--char", gchar, "character (JSON or file)")->required();
  gscalar->callback([&] { job = [&] { return Json{{"value", cyc_to_json(gauss_sum(char_from_json(load(gchar))))}}; }; });
  auto* gmatrix = gauss->add_subcommand("matrix", "matrix Gauss sum over M_g(Z/N)");
  gmatrix->add_option("--char", gchar, "character (JSON or file)")->required();
  gmatrix->add_option("--matrix", gmat, "2T2 as a JSON matrix")->required();
  gmatrix->add_option("--modulus", gmod, "N (defaults to the character modulus)");
  gmatrix->add_option("--L", gL, "divide 2T2 by L");
  gmatrix->add_flag("--closed-form", closed, "use the closed form for primitive characters");
  gmatrix->callback([&] {
    job = [&] {
      DirichletChar eta = char_from_json(load(gchar));
      IntMatrix A = int_matrix_from_json(load(gmat));
      long N = gmod ? gmod : eta.modulus();
      CycNumber v = closed ? matrix_gauss_closed_form(A, eta, gL) : matrix_gauss_sum(A, N, eta, gL);
      return Json{{"value", cyc_to_json(v)}, {"method", closed ? "closed-form" : "brute-force"}};
    };
  });

  // quad
  auto* quad = app.add_subcommand("quad", "quadratic form data");
  quad->require_subcommand(1);
  std::string qmat;
  long qq = 0;
  auto* qcos = quad->add_subcommand("cosets", "GL_n(Z) \\ D(I) in Hermite normal form");
  qcos->add_option("--matrix", qmat, "2I")->required();
  qcos->add_option("--q", qq, "restrict to det G a power of q");
  qcos->callback([&] {
    job = [&] {
      HalfIntMat I = half_int(qmat);
      Json arr = Json::array();
      for (auto& c : qq ? local_cosets(I, qq) : d_cosets(I)) arr.push_back({{"G", int_matrix_to_json(c.G)}, {"d", c.d}});
      return Json{{"cosets", arr}};
    };
  });
  auto* qbq = quad->add_subcommand("bq", "the local polynomial B_q(X, I)");
  qbq->add_option("--matrix", qmat, "2I")->required();
  qbq->add_option("--q", qq, "prime q")->required();
  qbq->callback([&] {
    job = [&] {
      Json c = Json::array();
      for (auto& x : siegel_poly_Bq(half_int(qmat), qq)) c.push_back(rat_to_string(x));
      return Json{{"q", qq}, {"coeffs", c}};
    };
  });

  // eis
  auto* eis = app.add_subcommand("eis", "Eisenstein coefficients");
  eis->require_subcommand(1);
  std::string eparams, eT1, eT4;
  long ek = 0, et = 0, eprec = 8, ebound = 2;
  auto* ecl = eis->add_subcommand("classical", "classical coefficient at s = 0");
  ecl->add_option("--params", eparams, "EisParams JSON")->required();
  ecl->add_option("--T1", eT1, "2T1")->required();
  ecl->add_option("--T4", eT4, "2T4")->required();
  ecl->callback([&] {
    job = [&] {
      EisParams P = params_from_json(load(eparams));
      CycNumber v = classical_coeff(half_int(eT1), half_int(eT4), P);
      Json j{{"value", cyc_to_json(v)}};
      if (v.is_rational()) j["rational"] = rat_to_string(v.rational_value());
      return j;
    };
  });
  auto* efam = eis->add_subcommand("family", "family coefficient at ([k], [t])");
  efam->add_option("--params", eparams, "EisParams JSON")->required();
  efam->add_option("--T1", eT1, "2T1")->required();
  efam->add_option("--T4", eT4, "2T4")->required();
  efam->add_option("--k", ek, "weight point")->required();
  efam->add_option("--t", et, "cyclotomic point")->required();
  efam->add_option("--prec", eprec, "precision N")->required();
  efam->callback([&] {
    job = [&] {
      EisParams P = params_from_json(load(eparams));
      PAdic v = family_coeff(half_int(eT1), half_int(eT4), ArithPoint::weight(ek, P.p), ArithPoint::cyclotomic(et, P.p), P, eprec);
      return Json{{"value", padic_to_json(v)}};
    };
  });
  auto* emeas = eis->add_subcommand("measure", "truncated double q-expansion");
  emeas->add_option("--params", eparams, "EisParams JSON")->required();
  emeas->add_option("--k", ek, "weight point")->required();
  emeas->add_option("--t", et, "cyclotomic point")->required();
  emeas->add_option("--bound", ebound, "trace bound on each side")->required();
  emeas->add_option("--prec", eprec, "precision N")->required();
  emeas->callback([&] {
    job = [&] {
      EisParams P = params_from_json(load(eparams));
      return qexp_to_json(measure_eval(ArithPoint::weight(ek, P.p), ArithPoint::cyclotomic(et, P.p), ebound, P, eprec));
    };
  });

  // ordinary
  auto* ord = app.add_subcommand("ordinary", "ordinary projector");
  ord->require_subcommand(1);
  std::string omodel;
  long oprec = 0;
  auto* oproj = ord->add_subcommand("project", "e = lim U^{n!}");
  oproj->add_option("--model", omodel, "LinearModel JSON")->required();
  oproj->add_option("--prec", oprec, "precision (defaults to the model's)");
  oproj->callback([&] {
    job = [&] {
      LinearModel M = model_from_json(load(omodel));
      LinearModel e = ordinary_projector(M, oprec ? oprec : M.N);
      Json j = model_to_json(e);
      j["rank"] = projector_rank(e);
      return j;
    };
  });

  // lfun
  auto* lf = app.add_subcommand("lfun", "Euler factors and the trivial-zero derivative");
  lf->require_subcommand(1);
  std::string ldata, lfam, lstar, lc = "1";
  long lt = 1;
  auto* leul = lf->add_subcommand("euler", "E_1, E, E* and the Steinberg test");
  leul->add_option("--data", ldata, "SatakeData JSON")->required();
  leul->add_option("--c", lc, "value at p of the combined character (0 when ramified)");
  leul->add_option("--t", lt, "t");
  leul->callback([&] {
    job = [&] {
      SatakeData d = satake_from_json(load(ldata));
      long N = d.alpha_p.precision();
      PAdic c = padic_from_json(load(lc), d.p, N);
      Json j{{"E1", padic_to_json(euler_E1(d, c, lt))}};
      try {
        j["E"] = padic_to_json(euler_E(d, c, lt));
      } catch (const PoleError& e) {
        j["E"] = {{"pole", e.what()}};
      }
      try {
        j["Estar"] = padic_to_json(euler_Estar(d));
      } catch (const PoleError& e) {
        j["Estar"] = {{"pole", e.what()}};
      }
      SteinbergInfo s = detect_steinberg(d);
      j["steinberg"] = s.steinberg;
      j["steinberg_index"] = s.index;
      return j;
    };
  });
  auto* lgs = lf->add_subcommand("gs-derivative", "d/ds L_p at the trivial zero");
  lgs->add_option("--family", lfam, "SatakeFamily JSON")->required();
  lgs->add_option("--lstar", lstar, "series of L* in (k - k0), JSON array")->required();
  lgs->callback([&] {
    job = [&] {
      SatakeFamily f = family_from_json(load(lfam));
      Json lj = load(lstar);
      if (lj.is_object()) lj = lj.at("series");
      DerivativeReport r = gs_derivative(f, series_from_json(lj, f.p, f.N));
      Json j{{"ell", padic_to_json(r.ell)},
             {"cofactor", padic_to_json(r.cofactor)},
             {"lstar", padic_to_json(r.lstar)},
             {"d_dk", padic_to_json(r.d_dk)},
             {"d_ds", padic_to_json(r.d_ds)},
             {"closed", padic_to_json(r.closed)},
             {"closed_matches", r.closed_matches},
             {"fd_quotient", padic_to_json(r.fd_quotient)},
             {"fd_precision", r.fd_precision},
             {"fd_matches", r.fd_matches},
             {"e1_series", series_to_json(e1_family(f))}};
      j["estar"] = r.estar ? padic_to_json(*r.estar) : Json(nullptr);
      return j;
    };
  });

  // selftest
  auto* st = app.add_subcommand("selftest", "run an acceptance block");
  std::string suite;
  st->add_option("suite", suite, "one of: " + [] {
    std::string s;
    for (auto& n : acceptance::suite_names()) s += (s.empty() ? "" : ", ") + n;
    return s;
  }())->required();
  // extra flags from the examples are accepted and ignored; each block fixes its own parameters
  long st_p = 0, st_j = 0;
  st->add_option("--p", st_p, "ignored");
  st->add_option("--j", st_j, "ignored");
  bool st_failed = false;
  st->callback([&] {
    job = [&] {
      Json arr = Json::array();
      bool all = true;
      for (int id : acceptance::suite(suite)) {
        acceptance::Result r = acceptance::run(id);
        all = all && r.pass();
        arr.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass()}, {"seconds", r.seconds}, {"budget", r.budget}, {"detail", r.detail}});
      }
      st_failed = !all;
      return Json{{"suite", suite}, {"pass", all}, {"results", arr}};
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }
  try {
    out.emit(job());
    return st_failed ? 6 : 0;
  } catch (const PoleError& e) {
    std::cerr << "pole: " << e.what() << "\n";
    if (!e.residue.empty()) std::cerr << "residue: " << e.residue << "\n";
    return e.exit_code();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const Json::exception& e) {
    std::cerr << "error: malformed input: " << e.what() << "\n";
    return 1;
  }
}
