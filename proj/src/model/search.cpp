#include <algorithm>
#include <numeric>
#include <random>

#include "omrel/model.hpp"
#include "omrel/parallel.hpp"

namespace omrel {

const char* to_string(SearchMode m) {
  switch (m) {
    case SearchMode::General:
      return "general";
    case SearchMode::Integral:
      return "integral";
    default:
      return "commutative";
  }
}

namespace {

std::vector<std::string> equation_vars(const Equation& eq) {
  auto a = eq.lhs.variables();
  auto b = eq.rhs.variables();
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

template <class Set, class Less>
std::optional<std::pair<typename Set::value_type, bool>> first_difference(const Set& lhs,
                                                                          const Set& rhs,
                                                                          bool leq, Less less) {
  std::optional<std::pair<typename Set::value_type, bool>> best;
  auto consider = [&](const typename Set::value_type& e, bool in_lhs) {
    if (!best || less(e, best->first)) best = std::make_pair(e, in_lhs);
  };
  for (const auto& e : lhs) {
    if (!rhs.contains(e)) consider(e, true);
  }
  if (!leq) {
    for (const auto& e : rhs) {
      if (!lhs.contains(e)) consider(e, false);
    }
  }
  return best;
}

}  // namespace

std::optional<CounterexampleReport> check_in_model(const Equation& eq, const RelModel& model) {
  RelModel m = model.with_vars(equation_vars(eq));
  BitRel l = eval_rel(eq.lhs, m);
  BitRel r = eval_rel(eq.rhs, m);
  bool leq = eq.relation == Relation::Leq;
  if (leq ? l.subset_of(r) : l == r) return std::nullopt;
  for (std::size_t u = 0; u < m.base; ++u) {
    for (std::size_t v = 0; v < m.base; ++v) {
      bool a = l.test(u, v);
      bool b = r.test(u, v);
      if ((a && !b) || (!leq && b && !a)) {
        CounterexampleReport rep;
        rep.equation = eq;
        rep.model = std::move(m);
        rep.witness = std::make_pair(u, v);
        rep.witness_in_lhs = a;
        return rep;
      }
    }
  }
  return std::nullopt;
}

std::optional<CounterexampleReport> check_in_model(const Equation& eq, const LangModel& model) {
  LangModel m = model.with_vars(equation_vars(eq));
  Language l = eval_lang(eq.lhs, m);
  Language r = eval_lang(eq.rhs, m);
  auto diff = first_difference(l, r, eq.relation == Relation::Leq, shortlex_less);
  if (!diff) return std::nullopt;
  CounterexampleReport rep;
  rep.equation = eq;
  rep.model = std::move(m);
  rep.witness = diff->first;
  rep.witness_in_lhs = diff->second;
  return rep;
}

bool CounterexampleReport::verify() const {
  try {
    std::optional<CounterexampleReport> again;
    if (const auto* rm = std::get_if<RelModel>(&model)) {
      again = check_in_model(equation, *rm);
      const auto* w = std::get_if<std::pair<std::size_t, std::size_t>>(&witness);
      if (!again || w == nullptr) return false;
      RelModel m = rm->with_vars(equation.lhs.variables());
      m = m.with_vars(equation.rhs.variables());
      if (w->first >= m.base || w->second >= m.base) return false;
      bool in_l = eval_rel(equation.lhs, m).test(w->first, w->second);
      bool in_r = eval_rel(equation.rhs, m).test(w->first, w->second);
      return witness_in_lhs ? (in_l && !in_r) : (in_r && !in_l);
    }
    const auto& lm = std::get<LangModel>(model);
    again = check_in_model(equation, lm);
    const auto* w = std::get_if<Word>(&witness);
    if (!again || w == nullptr) return false;
    LangModel m = lm.with_vars(equation.lhs.variables()).with_vars(equation.rhs.variables());
    bool in_l = eval_lang(equation.lhs, m).contains(*w);
    bool in_r = eval_lang(equation.rhs, m).contains(*w);
    return witness_in_lhs ? (in_l && !in_r) : (in_r && !in_l);
  } catch (const std::exception&) {
    return false;
  }
}

// --- relation models ---------------------------------------------------------

namespace {

enum class Verdict : std::uint8_t { Rejected, Passed, Failed };

struct Outcome {
  Verdict verdict = Verdict::Rejected;
  std::optional<CounterexampleReport> report;
};

bool in_class(const RelModel& m, SearchMode mode, std::size_t cap) {
  switch (mode) {
    case SearchMode::General:
      return true;
    case SearchMode::Integral:
      return is_integral_model(m, cap) == Tri::True;
    default:
      return is_commutative_model(m, cap) == Tri::True;
  }
}

Outcome evaluate(const Equation& eq, const RelModel& m, const RelSearchOptions& opts) {
  Outcome out;
  if (!in_class(m, opts.mode, opts.closure_cap)) return out;
  out.report = check_in_model(eq, m);
  out.verdict = out.report ? Verdict::Failed : Verdict::Passed;
  if (out.report) out.report->mode = opts.mode;
  return out;
}

RelModel model_from_index(std::size_t base, const std::vector<std::string>& vars,
                          std::uint64_t index) {
  RelModel m;
  m.base = base;
  const std::size_t bits = base * base;
  // var 0 is the most significant digit
  for (std::size_t k = vars.size(); k-- > 0;) {
    std::uint64_t code = index & ((std::uint64_t{1} << bits) - 1);
    index >>= bits;
    BitRel r(base);
    for (std::size_t b = 0; b < bits; ++b) {
      if ((code >> b) & 1U) r.set(b / base, b % base);
    }
    m.vars[vars[k]] = std::move(r);
  }
  return m;
}

std::vector<std::size_t> random_subset(std::mt19937_64& rng, std::size_t n, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < n; ++i) {
    if (coin(rng)) s.push_back(i);
  }
  return s;
}

BitRel random_relation(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> density(0.15, 0.6);
  std::bernoulli_distribution coin(density(rng));
  BitRel r(n);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (coin(rng)) r.set(u, v);
    }
  }
  return r;
}

BitRel random_permutation_union(std::mt19937_64& rng, std::size_t n) {
  BitRel r(n);
  std::size_t count = std::uniform_int_distribution<std::size_t>(0, 2)(rng);
  for (std::size_t c = 0; c < count; ++c) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    for (std::size_t i = 0; i < n; ++i) r.set(i, perm[i]);
  }
  return r;
}

RelModel random_model(const std::vector<std::string>& vars, const RelSearchOptions& opts,
                      std::uint64_t draw) {
  std::mt19937_64 rng(mix_seed(opts.seed, draw));
  std::size_t base = std::uniform_int_distribution<std::size_t>(1, opts.max_base)(rng);
  RelModel m;
  m.base = base;
  // Random relations are rarely integral or commutative; those modes mostly
  // draw from group-generated families.
  unsigned family = 0;
  if (opts.mode != SearchMode::General) {
    unsigned roll = static_cast<unsigned>(draw % 8);
    family = roll < 5 ? 1 : (roll < 7 ? 2 : 0);
  }
  bool klein = base == 4 && std::bernoulli_distribution(0.5)(rng);
  for (const auto& v : vars) {
    switch (family) {
      case 1:
        m.vars[v] = group_relation(base, random_subset(rng, base, 0.4), klein);
        break;
      case 2:
        m.vars[v] = random_permutation_union(rng, base);
        break;
      default:
        m.vars[v] = random_relation(rng, base);
        break;
    }
  }
  return m;
}

/// Scans outcomes in index order; returns true when the search should stop.
bool absorb(std::vector<Outcome>& batch, SearchStats& stats, std::size_t accept_target,
            std::optional<CounterexampleReport>& found) {
  for (auto& o : batch) {
    ++stats.candidates;
    if (o.verdict == Verdict::Rejected) {
      ++stats.rejected;
      continue;
    }
    ++stats.accepted;
    if (o.verdict == Verdict::Failed) {
      found = std::move(o.report);
      return true;
    }
    if (stats.accepted >= accept_target) return true;
  }
  return false;
}

}  // namespace

RelSearchResult search_rel_counterexample(const Equation& eq, const RelSearchOptions& opts) {
  RelSearchResult result;
  const auto vars = equation_vars(eq);
  const std::size_t max_base = std::max<std::size_t>(opts.max_base, 1);
  constexpr std::size_t kBatch = 2048;

  for (std::size_t base = 1; base <= std::min(opts.exhaustive_max_base, max_base); ++base) {
    const std::size_t bits = base * base * vars.size();
    if (bits >= 63 || (std::uint64_t{1} << bits) > opts.exhaustive_limit) break;
    const std::uint64_t total = std::uint64_t{1} << bits;
    for (std::uint64_t start = 0; start < total; start += kBatch) {
      std::size_t len = static_cast<std::size_t>(std::min<std::uint64_t>(kBatch, total - start));
      std::vector<Outcome> batch(len);
      parallel_for(len, [&](std::size_t i) {
        batch[i] = evaluate(eq, model_from_index(base, vars, start + i), opts);
      });
      if (absorb(batch, result.stats, SIZE_MAX, result.report)) {
        result.report->exhaustive = true;
        return result;
      }
    }
    result.stats.exhaustive_bases = base;
  }

  if (result.stats.exhaustive_bases >= max_base) {
    result.stats.exhaustive_only = true;
    return result;
  }
  const std::size_t target = result.stats.accepted + opts.random_models;
  const std::size_t max_draws = opts.random_models * std::max<std::size_t>(opts.max_draw_factor, 1);
  for (std::size_t start = 0; start < max_draws; start += kBatch) {
    std::size_t len = std::min(kBatch, max_draws - start);
    std::vector<Outcome> batch(len);
    parallel_for(len, [&](std::size_t i) {
      batch[i] = evaluate(eq, random_model(vars, opts, start + i), opts);
    });
    if (absorb(batch, result.stats, target, result.report)) break;
  }
  return result;
}

// --- language models -----------------------------------------------------------

namespace {

std::vector<Word> word_universe(const std::vector<char>& alphabet, std::size_t max_len) {
  std::vector<Word> out{Word{}};
  std::vector<Word> layer{Word{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<Word> next;
    for (const auto& w : layer) {
      for (char c : alphabet) next.push_back(w + c);
    }
    std::sort(next.begin(), next.end());
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

// All subsets of {0..n-1} with at most k elements, by size then lexicographically.
std::vector<std::vector<std::size_t>> small_subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t size = 0; size <= std::min(n, k); ++size) {
    std::vector<std::size_t> idx(size);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      out.push_back(idx);
      if (size == 0) break;
      std::size_t i = size;
      while (i > 0 && idx[i - 1] == n - size + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return out;
}

}  // namespace

LangSearchResult search_lang_counterexample(const Equation& eq, const LangSearchOptions& opts) {
  LangSearchResult result;
  const auto vars = equation_vars(eq);
  std::vector<char> alphabet;
  for (std::size_t i = 0; i < std::max<std::size_t>(opts.alphabet_size, 1); ++i) {
    alphabet.push_back(static_cast<char>('a' + i));
  }
  const auto words = word_universe(alphabet, opts.max_len);
  const auto subsets = small_subsets(words.size(), opts.max_words);
  auto language_of = [&](const std::vector<std::size_t>& idx) {
    Language l;
    for (auto i : idx) l.insert(words[i]);
    return l;
  };

  double total = 1;
  for (std::size_t i = 0; i < vars.size(); ++i) total *= static_cast<double>(subsets.size());
  constexpr std::size_t kBatch = 2048;

  auto run_batch = [&](std::size_t len, auto&& make_model) -> bool {
    std::vector<std::optional<CounterexampleReport>> found(len);
    parallel_for(len, [&](std::size_t i) { found[i] = check_in_model(eq, make_model(i)); });
    for (auto& f : found) {
      ++result.stats.candidates;
      ++result.stats.accepted;
      if (f) {
        result.report = std::move(f);
        return true;
      }
    }
    return false;
  };

  if (total <= static_cast<double>(opts.exhaustive_limit)) {
    result.exhaustive = true;
    result.stats.exhaustive_only = true;
    const auto count = static_cast<std::uint64_t>(total);
    for (std::uint64_t start = 0; start < count; start += kBatch) {
      std::size_t len = static_cast<std::size_t>(std::min<std::uint64_t>(kBatch, count - start));
      bool hit = run_batch(len, [&](std::size_t i) {
        std::uint64_t index = start + i;
        LangModel m;
        m.alphabet = alphabet;
        for (std::size_t k = vars.size(); k-- > 0;) {
          m.vars[vars[k]] = language_of(subsets[index % subsets.size()]);
          index /= subsets.size();
        }
        return m;
      });
      if (hit) {
        result.report->exhaustive = true;
        return result;
      }
    }
    return result;
  }

  for (std::size_t start = 0; start < opts.random_models; start += kBatch) {
    std::size_t len = std::min(kBatch, opts.random_models - start);
    bool hit = run_batch(len, [&](std::size_t i) {
      std::mt19937_64 rng(mix_seed(opts.seed, start + i));
      std::uniform_int_distribution<std::size_t> pick(0, subsets.size() - 1);
      LangModel m;
      m.alphabet = alphabet;
      for (const auto& v : vars) m.vars[v] = language_of(subsets[pick(rng)]);
      return m;
    });
    if (hit) break;
  }
  return result;
}

}  // namespace omrel
