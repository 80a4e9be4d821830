#include "polieq/bimatrix.hpp"

#include "polieq/game.hpp"
#include "polieq/lp.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace polieq {

using nlohmann::json;

namespace {

Matrix read_matrix(const json& doc, const char* key, std::size_t rows, std::size_t cols) {
  if (!doc.contains(key) || !doc.at(key).is_array() || doc.at(key).size() != rows) {
    throw ParseError(std::string("\"") + key + "\" must be an array of " + std::to_string(rows) + " rows");
  }
  Matrix m;
  for (const auto& jr : doc.at(key)) {
    if (!jr.is_array() || jr.size() != cols) {
      throw ParseError(std::string("every row of \"") + key + "\" needs " + std::to_string(cols) + " entries");
    }
    std::vector<Rational> row;
    for (const auto& cell : jr) {
      if (!cell.is_string()) throw ParseError(std::string("entries of \"") + key + "\" must be rational strings");
      try {
        row.push_back(parse_rational(cell.get<std::string>()));
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
      }
    }
    m.push_back(std::move(row));
  }
  return m;
}

Matrix transpose(const Matrix& m) {
  if (m.empty()) return m;
  Matrix t(m.front().size(), std::vector<Rational>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  }
  return t;
}

// Unique solution of a square-or-tall linear system, if there is one.
std::optional<std::vector<Rational>> solve_unique(Matrix a, std::vector<Rational> b) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a.front().size() : 0;
  std::size_t r = 0;
  std::vector<std::size_t> pivot_col;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) return std::nullopt;  // free column: not unique
    std::swap(a[p], a[r]);
    std::swap(b[p], b[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rational f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
      b[i] -= f * b[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  if (r < cols) return std::nullopt;
  for (std::size_t i = r; i < rows; ++i) {
    if (b[i] != 0) return std::nullopt;  // inconsistent
  }
  std::vector<Rational> x(cols);
  for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = b[i] / a[i][pivot_col[i]];
  return x;
}

std::vector<Rational> row_times(const std::vector<Rational>& x, const Matrix& m) {
  std::vector<Rational> out(m.front().size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += x[i] * m[i][j];
  }
  return out;
}

std::vector<Rational> times_col(const Matrix& m, const std::vector<Rational>& y) {
  std::vector<Rational> out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) out[i] += m[i][j] * y[j];
  }
  return out;
}

// Vertices of {(x, v) : x in simplex, x M <= v}: strategies of the row side
// that make the column side's payoffs in `M` tight on some set of columns.
std::vector<std::vector<Rational>> polytope_vertices(const Matrix& m) {
  const std::size_t a = m.size(), b = m.front().size();
  std::vector<std::vector<Rational>> found;
  for (std::uint64_t support = 1; support < (1ULL << a); ++support) {
    for (std::uint64_t tight = 1; tight < (1ULL << b); ++tight) {
      Matrix eq;
      std::vector<Rational> rhs;
      for (std::size_t i = 0; i < a; ++i) {
        if (support >> i & 1ULL) continue;
        std::vector<Rational> row(a + 1);
        row[i] = 1;
        eq.push_back(std::move(row));
        rhs.emplace_back(0);
      }
      std::vector<Rational> sum(a + 1, 1);
      sum[a] = 0;
      eq.push_back(std::move(sum));
      rhs.emplace_back(1);
      for (std::size_t j = 0; j < b; ++j) {
        if (!(tight >> j & 1ULL)) continue;
        std::vector<Rational> row(a + 1);
        for (std::size_t i = 0; i < a; ++i) row[i] = m[i][j];
        row[a] = -1;
        eq.push_back(std::move(row));
        rhs.emplace_back(0);
      }
      auto sol = solve_unique(std::move(eq), std::move(rhs));
      if (!sol) continue;
      const Rational level = sol->back();
      sol->pop_back();
      if (std::any_of(sol->begin(), sol->end(), [](const Rational& r) { return r < 0; })) continue;
      const auto payoff = row_times(*sol, m);
      if (std::any_of(payoff.begin(), payoff.end(), [&](const Rational& r) { return r > level; })) continue;
      if (std::find(found.begin(), found.end(), *sol) == found.end()) found.push_back(std::move(*sol));
    }
  }
  return found;
}

bool best_responds(const std::vector<Rational>& mix, const std::vector<Rational>& payoff) {
  const Rational best = *std::max_element(payoff.begin(), payoff.end());
  for (std::size_t i = 0; i < mix.size(); ++i) {
    if (mix[i] > 0 && payoff[i] != best) return false;
  }
  return true;
}

}  // namespace

Bimatrix parse_bimatrix(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), e.byte);
  }
  auto labels = [&](const char* key) {
    if (!doc.contains(key) || !doc.at(key).is_array() || doc.at(key).empty()) {
      throw ParseError(std::string("\"") + key + "\" must be a nonempty array of labels");
    }
    std::vector<std::string> out;
    for (const auto& l : doc.at(key)) {
      if (!l.is_string()) throw ParseError("action labels must be strings");
      out.push_back(l.get<std::string>());
    }
    return out;
  };
  auto rows = labels("rows");
  auto cols = labels("cols");
  Matrix a = read_matrix(doc, "A", rows.size(), cols.size());
  Matrix b = read_matrix(doc, "B", rows.size(), cols.size());
  const std::string side = doc.value("dictator", std::string("row"));
  if (side == "row") return Bimatrix{std::move(rows), std::move(cols), std::move(a), std::move(b)};
  if (side == "col") return Bimatrix{std::move(cols), std::move(rows), transpose(a), transpose(b)};
  throw ParseError("\"dictator\" must be \"row\" or \"col\"");
}

MixedProfile make_profile(const Bimatrix& m, std::vector<Rational> x, std::vector<Rational> y) {
  MixedProfile p;
  const auto ay = times_col(m.A, y);
  const auto by = times_col(m.B, y);
  for (std::size_t i = 0; i < x.size(); ++i) {
    p.dictator_payoff += x[i] * ay[i];
    p.opponent_payoff += x[i] * by[i];
  }
  p.dictator = std::move(x);
  p.opponent = std::move(y);
  return p;
}

bool is_nash(const Bimatrix& m, const std::vector<Rational>& x, const std::vector<Rational>& y) {
  return best_responds(x, times_col(m.A, y)) && best_responds(y, row_times(x, m.B));
}

MixedProfile political_optimum(const Bimatrix& m) {
  const std::size_t a = m.dictator_actions.size(), b = m.opponent_actions.size();
  std::optional<MixedProfile> best;
  for (std::size_t j = 0; j < b; ++j) {
    LinearProgram lp;
    for (std::size_t i = 0; i < a; ++i) {
      const int v = lp.add_variable(m.dictator_actions[i]);
      lp.add_constraint({{v, 1}}, Relation::kGreaterEqual, 0);
    }
    LinearForm sum;
    for (std::size_t i = 0; i < a; ++i) sum.push_back({static_cast<int>(i), 1});
    lp.add_constraint(std::move(sum), Relation::kEqual, 1);
    for (std::size_t k = 0; k < b; ++k) {
      if (k == j) continue;
      LinearForm br;
      for (std::size_t i = 0; i < a; ++i) br.push_back({static_cast<int>(i), m.B[i][j] - m.B[i][k]});
      lp.add_constraint(std::move(br), Relation::kGreaterEqual, 0);
    }
    LinearForm mine, theirs;
    for (std::size_t i = 0; i < a; ++i) {
      mine.push_back({static_cast<int>(i), m.A[i][j]});
      theirs.push_back({static_cast<int>(i), m.B[i][j]});
    }
    lp.objective = mine;
    const LpOutcome first = lp_solve(lp);
    if (first.status != LpStatus::kOptimal) continue;
    lp.add_constraint(mine, Relation::kGreaterEqual, first.objective);
    lp.objective = theirs;
    const LpOutcome second = lp_solve(lp);
    std::vector<Rational> y(b);
    y[j] = 1;
    MixedProfile cand = make_profile(m, second.assignment, std::move(y));
    if (!best || cand.dictator_payoff > best->dictator_payoff ||
        (cand.dictator_payoff == best->dictator_payoff && cand.opponent_payoff > best->opponent_payoff)) {
      best = std::move(cand);
    }
  }
  // Some column is always a best response, so at least one program is feasible.
  return *best;
}

std::vector<MixedProfile> nash_equilibria(const Bimatrix& m, std::uint64_t limit) {
  const std::size_t a = m.dictator_actions.size(), b = m.opponent_actions.size();
  if (a + b >= 63 || (1ULL << (a + b)) > limit) {
    throw std::length_error("support enumeration over 2^" + std::to_string(a + b) + " pairs exceeds the limit");
  }
  const auto xs = polytope_vertices(m.B);
  const auto ys = polytope_vertices(transpose(m.A));
  std::vector<MixedProfile> out;
  for (const auto& x : xs) {
    for (const auto& y : ys) {
      if (is_nash(m, x, y)) out.push_back(make_profile(m, x, y));
    }
  }
  return out;
}

}  // namespace polieq
