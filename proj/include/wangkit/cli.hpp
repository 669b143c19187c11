#pragma once

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "wangkit/entropy.hpp"
#include "wangkit/fixpoint.hpp"
#include "wangkit/io.hpp"
#include "wangkit/manifest.hpp"
#include "wangkit/shifts1d.hpp"
#include "wangkit/solver.hpp"
#include "wangkit/tm.hpp"

namespace wangkit {

// Exit codes: 0 success, 2 usage, 3 input/format error, 4 unsatisfiable or
// violated, 5 budget exhausted.
enum ExitCode {
  kOk = 0,
  kUsage = 2,
  kInputError = 3,
  kUnsat = 4,
  kBudget = 5
};

namespace cli_detail {

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream data;
  data << in.rdbuf();
  return data.str();
}

inline TileSet load_tileset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open tile set '" + path + "'");
  return read_tileset(in);
}

inline TMachine load_tm(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open machine '" + path + "'");
  return read_tm(in);
}

inline SequenceSource parse_seq(const std::string& spec) {
  if (spec == "thue-morse") return SequenceSource::thue_morse();
  if (spec.rfind("periodic:", 0) == 0)
    return SequenceSource::periodic(spec.substr(9));
  if (spec.rfind("file:", 0) == 0) {
    std::string word = slurp(spec.substr(5));
    while (!word.empty() && (word.back() == '\n' || word.back() == '\r'))
      word.pop_back();
    return SequenceSource::word(word);
  }
  throw InputError("unknown sequence spec '" + spec +
                   "' (use thue-morse, periodic:<w>, or file:<path>)");
}

// Program file: either a checker template
//   mask <0/1 string>        (1 = payload bit must be zero)
//   alg <id>
//   letters a,b              (optional letter projection)
// or a raw machine wrapper
//   machine <path>
//   bits <sym0> <sym1>
//   pad <sym>
//   end <sym>
struct ProgramFile {
  bool checker = true;
  BundleTemplate tpl;
  std::string machine_path;
  int bit0 = 1, bit1 = 2, pad = 0, end = -1;
  std::vector<std::string> letters;
};

inline ProgramFile parse_program(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open program '" + path + "'");
  ProgramFile pf;
  std::string line;
  int lineno = 0;
  bool saw_kind = false;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = detail::tokenize(line);
    if (toks.empty()) continue;
    if (toks[0] == "mask") {
      if (toks.size() != 2) throw FormatError("mask needs one 0/1 string");
      pf.checker = true;
      saw_kind = true;
      pf.tpl.mask.clear();
      for (char c : toks[1]) {
        if (c != '0' && c != '1')
          throw FormatError("mask must be a 0/1 string");
        pf.tpl.mask.push_back(c - '0');
      }
    } else if (toks[0] == "alg") {
      pf.tpl.payload_alg = int(detail::parse_int(toks[1], "alg", lineno));
    } else if (toks[0] == "machine") {
      pf.checker = false;
      saw_kind = true;
      pf.machine_path = toks[1];
    } else if (toks[0] == "bits") {
      pf.bit0 = int(detail::parse_int(toks[1], "bit0", lineno));
      pf.bit1 = int(detail::parse_int(toks[2], "bit1", lineno));
    } else if (toks[0] == "pad") {
      pf.pad = int(detail::parse_int(toks[1], "pad", lineno));
    } else if (toks[0] == "end") {
      pf.end = int(detail::parse_int(toks[1], "end", lineno));
    } else if (toks[0] == "letters") {
      std::istringstream ls(toks[1]);
      std::string sym;
      while (std::getline(ls, sym, ','))
        if (!sym.empty()) pf.letters.push_back(sym);
    } else {
      throw FormatError("line " + std::to_string(lineno) +
                        ": unknown program directive '" + toks[0] + "'");
    }
  }
  if (!saw_kind)
    throw FormatError("program file needs a 'mask' or 'machine' line");
  return pf;
}

inline std::vector<int> parse_symbols(const std::string& s) {
  std::vector<int> out;
  for (char c : s) {
    if (c >= '0' && c <= '9')
      out.push_back(c - '0');
    else if (c >= 'a' && c <= 'z')
      out.push_back(c - 'a' + 10);
    else
      throw InputError("input symbols must be 0-9a-z");
  }
  return out;
}

inline Rat parse_rational(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(BigInt(s));
    return Rat(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
  } catch (const std::exception&) {
    throw InputError("cannot parse rational '" + s + "'");
  }
}

}  // namespace cli_detail

// Runs one subcommand; output goes to `out`, diagnostics to `err`.
inline int dispatch(const std::vector<std::string>& args, std::ostream& out,
                    std::ostream& err) {
  CLI::App app{"Wang tiling toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  std::uint64_t budget = 10'000'000;
  std::uint64_t seed = 1;
  int jobs = 1;
  std::string manifest_path;
  app.add_option("--budget", budget, "node-expansion budget");
  app.add_option("--seed", seed, "seed for sampled verification");
  app.add_option("--jobs", jobs, "worker count (1 = reference behavior)");
  app.add_option("--manifest", manifest_path, "write a reproducibility manifest");

  RunManifest manifest;
  manifest.set("seed", std::to_string(seed));
  manifest.set("jobs", std::to_string(jobs));

  // --- solve ---
  auto* solve = app.add_subcommand("solve", "complete/count/enumerate tilings");
  std::string s_tileset, s_fixed, s_mode = "count", s_torus;
  int s_width = 0, s_height = 0;
  solve->add_option("--tileset", s_tileset)->required();
  solve->add_option("--width", s_width);
  solve->add_option("--height", s_height);
  solve->add_option("--fixed", s_fixed);
  solve->add_option("--mode", s_mode)->check(CLI::IsMember({"first", "count", "enumerate"}));
  solve->add_option("--torus", s_torus, "PxQ torus search");

  // --- compile ---
  auto* compile_cmd = app.add_subcommand("compile", "program to tile set");
  std::string c_program, c_out;
  int c_zoom = 0, c_kbits = 0, c_mzone = 0, c_level = -1;
  bool c_qp = false;
  compile_cmd->add_option("--program", c_program)->required();
  compile_cmd->add_option("--zoom", c_zoom)->required();
  compile_cmd->add_option("--kbits", c_kbits)->required();
  compile_cmd->add_option("--mzone", c_mzone)->required();
  compile_cmd->add_option("--level", c_level);
  compile_cmd->add_flag("--quasiperiodic", c_qp);
  compile_cmd->add_option("-o,--output", c_out)->required();

  // --- verify-sim ---
  auto* verify = app.add_subcommand("verify-sim", "check tau simulates rho");
  std::string v_tau_program, v_rho;
  int v_zoom = 0, v_kbits = 0, v_mzone = 0;
  verify->add_option("--tau", v_tau_program, "program file compiled as tau, or 'skeleton'")->required();
  verify->add_option("--rho", v_rho, "tile set file")->required();
  verify->add_option("--zoom", v_zoom)->required();
  verify->add_option("--kbits", v_kbits);
  verify->add_option("--mzone", v_mzone);

  // --- entropy ---
  auto* entropy_cmd = app.add_subcommand("entropy", "strip-count entropy bounds");
  std::string e_tileset;
  int e_maxw = 8;
  entropy_cmd->add_option("--tileset", e_tileset)->required();
  entropy_cmd->add_option("--max-width", e_maxw);

  // --- redblue ---
  auto* redblue = app.add_subcommand("redblue", "red/blue density recursion");
  int r_C = 2, r_levels = 4;
  std::string r_alpha = "1", r_sched = "auto", r_henum = "const:1/2";
  std::string r_constN, r_ppm;
  int r_ppm_level = 2;
  redblue->add_option("--C", r_C);
  redblue->add_option("--constant-N", r_constN, "use a constant toy schedule");
  redblue->add_option("--alpha", r_alpha);
  redblue->add_option("--beta-schedule", r_sched)->check(CLI::IsMember({"auto"}));
  redblue->add_option("--h-enum", r_henum, "const:<p/q> or file:<path>");
  redblue->add_option("--levels", r_levels);
  redblue->add_option("--ppm", r_ppm, "dump the level-k red map as PPM");
  redblue->add_option("--ppm-level", r_ppm_level);

  // --- embed-check ---
  auto* embed = app.add_subcommand("embed-check", "delegation layout checks");
  int em_C = 2, em_levels = 2;
  std::string em_word;
  embed->add_option("--schedule", em_C);
  embed->add_option("--levels", em_levels);
  embed->add_option("--word", em_word)->required();

  // --- lemma2 ---
  auto* lemma2 = app.add_subcommand("lemma2", "recurrence bound oracle");
  std::string l2_seq;
  int l2_n = 1;
  long long l2_q = 1;
  long l2_window = 1 << 14;
  lemma2->add_option("--seq", l2_seq)->required();
  lemma2->add_option("--n", l2_n);
  lemma2->add_option("--q", l2_q);
  lemma2->add_option("--window", l2_window);

  // --- lemma3 ---
  auto* lemma3 = app.add_subcommand("lemma3", "product-shift recurrence oracle");
  std::string l3_seq, l3_period, l3_factor;
  long l3_window = 1 << 14;
  lemma3->add_option("--seq", l3_seq)->required();
  lemma3->add_option("--period", l3_period)->required();
  lemma3->add_option("--v", l3_factor, "factor as pairs, e.g. 0a,1b")->required();
  lemma3->add_option("--window", l3_window);

  // --- canonical ---
  auto* canonical = app.add_subcommand("canonical", "greedy canonical word");
  std::string ca_forbidden;
  std::size_t ca_length = 16;
  canonical->add_option("--forbidden", ca_forbidden)->required();
  canonical->add_option("--length", ca_length);

  // --- tm-run ---
  auto* tmrun = app.add_subcommand("tm-run", "simulate a machine");
  std::string tr_machine, tr_input, tr_ro;
  int tr_steps = 1000, tr_cells = 1000;
  tmrun->add_option("--machine", tr_machine)->required();
  tmrun->add_option("--input", tr_input);
  tmrun->add_option("--ro", tr_ro);
  tmrun->add_option("--max-steps", tr_steps);
  tmrun->add_option("--max-cells", tr_cells);

  // --- tm-tiles ---
  auto* tmtiles = app.add_subcommand("tm-tiles", "space-time diagram tiles");
  std::string tt_machine, tt_out;
  tmtiles->add_option("--machine", tt_machine)->required();
  tmtiles->add_option("-o,--output", tt_out)->required();

  std::vector<const char*> argv;
  argv.push_back("wangkit");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kUsage;
  }

  manifest.set("budget", std::to_string(budget));
  int code = kOk;
  try {
    if (*solve) {
      manifest.subcommand = "solve";
      manifest.add_input(s_tileset);
      manifest.set("mode", s_mode);
      TileSet ts = cli_detail::load_tileset(s_tileset);
      if (!s_torus.empty()) {
        auto x = s_torus.find('x');
        if (x == std::string::npos) throw InputError("torus wants PxQ");
        int p = std::stoi(s_torus.substr(0, x));
        int q = std::stoi(s_torus.substr(x + 1));
        manifest.set("torus", s_torus);
        auto r = torus_tilings(ts, p, q, budget, jobs);
        out << "torus " << p << 'x' << q << ' ' << (r.exists ? "exists" : "none")
            << " count " << r.count << ' ' << to_string(r.status) << '\n';
        code = r.status == SolveStatus::BudgetExhausted ? kBudget
               : r.exists                               ? kOk
                                                        : kUnsat;
      } else {
        if (s_width <= 0 || s_height <= 0)
          throw InputError("solve needs --width and --height");
        SolveRequest req = make_request(ts, s_width, s_height);
        manifest.set("width", std::to_string(s_width));
        manifest.set("height", std::to_string(s_height));
        req.budget = budget;
        req.jobs = jobs;
        req.mode = s_mode == "first"   ? SolveMode::First
                   : s_mode == "count" ? SolveMode::Count
                                       : SolveMode::Enumerate;
        if (!s_fixed.empty()) {
          manifest.add_input(s_fixed);
          std::ifstream in(s_fixed);
          if (!in) throw InputError("cannot open patch '" + s_fixed + "'");
          req.fixed = read_patch(in);
        }
        auto res = solve_patch(req);
        if (req.mode == SolveMode::Count) {
          out << "count " << res.count << ' ' << to_string(res.status) << '\n';
        } else {
          out << "count " << res.count << ' ' << to_string(res.status) << '\n';
          for (const auto& p : res.patches) write_patch(out, p);
        }
        code = res.status == SolveStatus::Sat          ? kOk
               : res.status == SolveStatus::Unsat      ? kUnsat
                                                       : kBudget;
      }
    } else if (*compile_cmd) {
      manifest.subcommand = "compile";
      manifest.add_input(c_program);
      manifest.set("zoom", std::to_string(c_zoom));
      manifest.set("kbits", std::to_string(c_kbits));
      manifest.set("mzone", std::to_string(c_mzone));
      manifest.set("quasiperiodic", c_qp ? "1" : "0");
      auto pf = cli_detail::parse_program(c_program);
      ProgramBundle bundle;
      if (pf.checker) {
        bundle = self_referential_program(pf.tpl);
      } else {
        bundle = raw_bundle(cli_detail::load_tm(pf.machine_path), pf.bit0,
                            pf.bit1, pf.pad, pf.end);
        manifest.add_input(pf.machine_path);
      }
      bundle.alphabet = pf.letters;
      bundle.level_field = c_level;
      CompiledSet cs;
      if (c_qp) {
        MacroLayout base = layout(c_zoom, c_kbits, c_mzone);
        auto up = quasiperiodic_upgrade(base, bundle);
        cs = compile(bundle, up.layout, up.patterns);
      } else {
        cs = compile(bundle, layout(c_zoom, c_kbits, c_mzone));
      }
      std::ofstream f(c_out);
      if (!f) throw InputError("cannot write '" + c_out + "'");
      write_tileset(f, cs.ts);
      out << "compiled " << cs.ts.tiles.size() << " tiles, "
          << cs.ts.colors << " colors\n";
    } else if (*verify) {
      manifest.subcommand = "verify-sim";
      manifest.add_input(v_rho);
      TileSet rho = cli_detail::load_tileset(v_rho);
      CompiledSet tau;
      if (v_tau_program == "skeleton") {
        tau = skeleton_compiled(v_zoom);
      } else {
        manifest.add_input(v_tau_program);
        auto pf = cli_detail::parse_program(v_tau_program);
        if (!pf.checker)
          throw InputError("verify-sim expects a checker program or 'skeleton'");
        ProgramBundle bundle = self_referential_program(pf.tpl);
        tau = compile(bundle, layout(v_zoom, v_kbits, v_mzone));
      }
      auto rep = verify_simulation(tau, rho, budget);
      out << "constructive " << (rep.constructive_ok ? "ok" : "fail") << '\n';
      out << "soundness " << (rep.soundness_ok ? "ok" : "fail") << ' '
          << rep.macro_tiles_enumerated << " macro-tiles "
          << to_string(rep.soundness_status) << '\n';
      out << "matching " << (rep.matching_ok ? "ok" : "fail") << '\n';
      for (const auto& f : rep.failures) out << "note " << f << '\n';
      code = rep.all_ok() ? kOk : kUnsat;
    } else if (*entropy_cmd) {
      manifest.subcommand = "entropy";
      manifest.add_input(e_tileset);
      manifest.set("max_width", std::to_string(e_maxw));
      TileSet ts = cli_detail::load_tileset(e_tileset);
      auto b = transfer_entropy_bounds(ts, e_maxw, budget);
      for (int w = 1; w <= b.width_achieved; ++w)
        out << "width " << w << " lower "
            << b.lower_by_width[std::size_t(w - 1)] << " upper "
            << b.upper_by_width[std::size_t(w - 1)] << '\n';
      out << "bounds " << b.lower << ' ' << b.upper << " width "
          << b.width_achieved << '\n';
      if (b.exhausted) {
        out << "budget-exhausted\n";
        code = kBudget;
      }
    } else if (*redblue) {
      manifest.subcommand = "redblue";
      manifest.set("levels", std::to_string(r_levels));
      manifest.set("h_enum", r_henum);
      ZoomSchedule sched = r_constN.empty()
                               ? ZoomSchedule::paper(r_C)
                               : ZoomSchedule::constant(BigInt(r_constN));
      BigInt alpha_v = BigInt(r_alpha);
      RERealEnumerator h;
      if (r_henum.rfind("const:", 0) == 0) {
        Rat v = cli_detail::parse_rational(r_henum.substr(6));
        h = constant_enumerator(v);
      } else if (r_henum.rfind("file:", 0) == 0) {
        std::string path = r_henum.substr(5);
        manifest.add_input(path);
        std::ifstream in(path);
        if (!in) throw InputError("cannot open '" + path + "'");
        auto vals = std::make_shared<std::vector<Rat>>();
        std::string line;
        while (std::getline(in, line)) {
          auto toks = detail::tokenize(line);
          if (!toks.empty()) vals->push_back(cli_detail::parse_rational(toks[0]));
        }
        if (vals->empty()) throw InputError("empty enumerator file");
        h = [vals](int k) {
          std::size_t i = std::min<std::size_t>(std::size_t(k) - 1,
                                                vals->size() - 1);
          return (*vals)[i];
        };
      } else {
        throw InputError("h-enum wants const:<p/q> or file:<path>");
      }
      auto res = beta_schedule(h, sched, r_levels,
                               [alpha_v](int) { return alpha_v; });
      out << "k nu_R nu_B beta_k approx_h\n";
      for (const auto& s : res.steps)
        out << s.level << ' ' << s.nu_red << ' ' << s.nu_blue << ' ' << s.beta
            << ' ' << s.approx << '\n';
      if (!r_ppm.empty()) {
        RedBlueParams p;
        p.schedule = sched;
        p.alpha = [alpha_v](int) { return alpha_v; };
        p.beta = [alpha_v](int) { return alpha_v; };
        ColorMap map = expand_colors(p, r_ppm_level, true);
        std::ofstream f(r_ppm, std::ios::binary);
        if (!f) throw InputError("cannot write '" + r_ppm + "'");
        f << "P6\n" << map.side << ' ' << map.side << "\n255\n";
        for (long y = map.side - 1; y >= 0; --y)
          for (long x = 0; x < map.side; ++x) {
            bool red = map.at(x, y);
            f.put(char(red ? 200 : 40));
            f.put(char(40));
            f.put(char(red ? 40 : 200));
          }
        out << "ppm " << r_ppm << ' ' << map.side << 'x' << map.side << '\n';
      }
    } else if (*embed) {
      manifest.subcommand = "embed-check";
      manifest.add_input(em_word);
      manifest.set("schedule", std::to_string(em_C));
      manifest.set("levels", std::to_string(em_levels));
      std::string word = cli_detail::slurp(em_word);
      while (!word.empty() && (word.back() == '\n' || word.back() == '\r'))
        word.pop_back();
      ZoomSchedule sched = ZoomSchedule::paper(em_C);
      bool all_ok = true;
      for (int k = 1; k <= em_levels; ++k) {
        FieldGrid g = make_fieldsets(sched, k, 1, 1, 4, 4, word);
        auto rep = check_fields(sched, g, word);
        out << "level " << k << " fields "
            << (rep.ok() ? "ok" : "violated") << " chunk-length "
            << chunk_length(sched, k) << '\n';
        all_ok = all_ok && rep.ok();
      }
      code = all_ok ? kOk : kUnsat;
    } else if (*lemma2) {
      manifest.subcommand = "lemma2";
      manifest.set("seq", l2_seq);
      manifest.set("n", std::to_string(l2_n));
      manifest.set("q", std::to_string(l2_q));
      manifest.set("window", std::to_string(l2_window));
      SequenceSource src = cli_detail::parse_seq(l2_seq);
      auto b = lemma2_bound(src, l2_n, l2_q, l2_window);
      out << "L " << b.L << ' ' << (b.complete ? "complete" : "partial")
          << " window " << l2_window << '\n';
    } else if (*lemma3) {
      manifest.subcommand = "lemma3";
      manifest.set("seq", l3_seq);
      manifest.set("period", l3_period);
      manifest.set("v", l3_factor);
      SequenceSource src = cli_detail::parse_seq(l3_seq);
      std::vector<std::pair<char, char>> v;
      std::istringstream vs(l3_factor);
      std::string pair;
      while (std::getline(vs, pair, ',')) {
        if (pair.size() != 2) throw InputError("factor pairs must be 2 chars");
        v.push_back({pair[0], pair[1]});
      }
      auto rep = lemma3_check(src, l3_period, v, l3_window);
      out << (rep.present ? "present" : "absent") << " gap " << rep.gap
          << (rep.gap_certified ? "" : " (uncertified)") << " L " << rep.L
          << " decision " << (rep.decision_matches ? "consistent" : "mismatch")
          << '\n';
      code = rep.decision_matches ? kOk : kUnsat;
    } else if (*canonical) {
      manifest.subcommand = "canonical";
      manifest.add_input(ca_forbidden);
      manifest.set("length", std::to_string(ca_length));
      std::ifstream in(ca_forbidden);
      if (!in) throw InputError("cannot open '" + ca_forbidden + "'");
      std::string alphabet;
      std::vector<std::string> words;
      std::string line;
      int lineno = 0;
      while (std::getline(in, line)) {
        ++lineno;
        auto toks = detail::tokenize(line);
        if (toks.empty()) continue;
        if (toks[0] == "alphabet") {
          alphabet = toks.at(1);
        } else {
          words.push_back(toks[0]);
        }
      }
      if (alphabet.empty())
        throw FormatError("forbidden-word file needs an 'alphabet' line");
      auto c = canonical_config(forbidden_list(alphabet, words), ca_length,
                                budget);
      out << c.word << '\n';
    } else if (*tmrun) {
      manifest.subcommand = "tm-run";
      manifest.add_input(tr_machine);
      manifest.set("input", tr_input);
      TMachine m = cli_detail::load_tm(tr_machine);
      std::vector<int> input = cli_detail::parse_symbols(tr_input);
      std::vector<int> ro = cli_detail::parse_symbols(tr_ro);
      auto trace = run_tm(m, input, ro, tr_steps, tr_cells);
      out << to_string(trace.outcome) << ' ' << trace.steps << " steps\n";
      code = trace.outcome == RunOutcome::Accept ? kOk : kUnsat;
    } else if (*tmtiles) {
      manifest.subcommand = "tm-tiles";
      manifest.add_input(tt_machine);
      TMachine m = cli_detail::load_tm(tt_machine);
      DiagramTiles dt = diagram_tiles(m);
      std::ofstream f(tt_out);
      if (!f) throw InputError("cannot write '" + tt_out + "'");
      write_tileset(f, dt.ts);
      out << "wrote " << dt.ts.tiles.size() << " tiles\n";
    }
  } catch (const ExtensionError& e) {
    err << "error: " << e.what() << '\n';
    manifest.outcome = "extension-error";
    code = kUnsat;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    manifest.outcome = "input-error";
    code = kInputError;
  }
  if (code == kUnsat) manifest.outcome = "unsat";
  if (code == kBudget) manifest.outcome = "budget-exhausted";
  if (!manifest_path.empty()) {
    std::ofstream mf(manifest_path);
    if (mf) manifest.write(mf);
  }
  return code;
}

}  // namespace wangkit
