#pragma once

#include "support.hpp"

namespace fixgame::cli {

struct Global {
  int jobs = 0;
  std::uint64_t seed = 0x61627374u;
  bool compact = false;
};

struct McArgs {
  std::string ts, formula;
  std::vector<std::string> states;
  std::string engine = "local";
  std::string upto = "none";
  bool trace = false;
};

struct PairArgs {
  std::string ts, s1, s2;
  std::string upto = "none";
  bool trace = false;
};

struct NfaArgs {
  std::string nfa, q1, q2;
  std::string upto = "none";
};

struct LukasArgs {
  std::string input, pndt, epsilon;
  std::int64_t grid = 0;
  std::size_t max_iter = 100000;
};

struct SystemArgs {
  std::string input;
  Frontend fe;
  std::string epsilon;
  std::size_t max_iter = 100000;
  BasisSpec basis;
  std::vector<std::string> states;  // extra --state queries
  std::string index, upto = "none", trace_file;
  bool trace = false;
  bool all_moves = false;
};

struct GaloisArgs {
  std::string input, connection, ts, abstract_ts, pndt, abstract_system;
  std::string epsilon = "1/1000000000";
  std::size_t max_iter = 100000;
};

struct AdjointArgs {
  std::string table, from;
};

Report mc_check(const McArgs& a, const Global& g);
Report pair_check(const PairArgs& a, bisim::Kind kind, const Global& g);
Report nfa_equiv(const NfaArgs& a, const Global& g);
Report lukas_eval(const LukasArgs& a, const Global& g);
Report solve_system(const SystemArgs& a, const Global& g);
Report check_system(const SystemArgs& a, const Global& g);
Report game_moves(const SystemArgs& a, const Global& g);
Report verify_upto(const SystemArgs& a, const Global& g);
Report verify_galois(const GaloisArgs& a, const Global& g);
Report adjoint_check(const AdjointArgs& a, const Global& g);

Rational parse_tolerance(const std::string& text);

}  // namespace fixgame::cli
