// Independent brute-force reference for the whole pipeline. Everything
// here is dense, quadratic and keyed by token strings; it never touches
// the library's sparse structures, so agreement between the two paths is
// meaningful. Reals are computed in long double.
#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

using Token = std::string;
using TokenPair = std::pair<Token, Token>;
using Docs = std::vector<std::vector<Token>>;

struct Counts {
  std::map<Token, std::uint64_t> unigrams;  // surviving tokens only
  std::map<TokenPair, std::uint64_t> pairs;
  std::uint64_t total_tokens = 0;  // includes filtered tokens
};

Counts count(const Docs& docs, int window, std::uint32_t min_count);
Counts count_prefix(const Docs& docs, int window, std::uint32_t min_count,
                    std::uint64_t token_limit);

struct Metrics {
  std::map<Token, long double> d;
  std::map<TokenPair, std::uint32_t> rank;
  std::map<TokenPair, long double> q;
  std::map<TokenPair, long double> h;
  std::map<TokenPair, long double> p;
  std::map<Token, long double> x;
  std::map<Token, long double> y;
  std::map<Token, std::uint64_t> support;  // l(w), nonzero row entries
};

Metrics metrics(const Counts& counts, bool relative_mass);

struct NeighborLists {
  std::map<Token, long double> overlap;          // L per eligible candidate
  std::map<Token, std::uint64_t> common;         // shared context types
  std::vector<Token> strategy1;
  std::vector<Token> strategy2;
  std::vector<Token> closest;
  bool degenerate = false;                       // ln(sum*max) == 0
};

NeighborLists neighbors(const Counts& counts, const Metrics& m,
                        const Token& target, std::size_t k);

struct Coords {
  long double rho = 0;
  long double theta = 0;
  long double rho_prime = 0;
  long double theta_prime = 0;
  bool clamped = false;
};

Coords embed(const Metrics& m, const Token& word, bool euclidean_rho);

}  // namespace oracle
