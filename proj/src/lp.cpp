#include "lct/lp.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "lct/errors.hpp"

namespace lct {

namespace {

// Zero-coefficient rows: is "0 rel rhs" false?
bool contradicts(const Rat& rhs, bool strict) { return strict ? rhs.sign() >= 0 : rhs.sign() > 0; }

struct WorkRow {
  QVector coeffs;
  Rat rhs;
  bool strict = false;
  QVector origin;  // multipliers over the original rows

  bool zero() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](const Rat& c) { return c.is_zero(); });
  }
};

WorkRow combine(const WorkRow& p, const Rat& kp, const WorkRow& n, const Rat& kn) {
  WorkRow out;
  out.coeffs.resize(p.coeffs.size());
  for (std::size_t i = 0; i < p.coeffs.size(); ++i) out.coeffs[i] = p.coeffs[i] * kp + n.coeffs[i] * kn;
  out.rhs = p.rhs * kp + n.rhs * kn;
  out.strict = p.strict || n.strict;
  out.origin.resize(p.origin.size());
  for (std::size_t i = 0; i < p.origin.size(); ++i)
    if (!p.origin[i].is_zero() || !n.origin[i].is_zero()) out.origin[i] = p.origin[i] * kp + n.origin[i] * kn;
  return out;
}

// Keeps, for each coefficient direction, only the strongest row.
std::vector<WorkRow> prune(std::vector<WorkRow> rows) {
  std::map<QVector, std::size_t> best;
  std::vector<WorkRow> out;
  for (auto& r : rows) {
    if (r.zero()) {
      out.push_back(std::move(r));
      continue;
    }
    Rat lead;
    for (const auto& c : r.coeffs)
      if (!c.is_zero()) {
        lead = c.abs();
        break;
      }
    QVector key;
    key.reserve(r.coeffs.size());
    for (const auto& c : r.coeffs) key.push_back(c / lead);
    const Rat scaled_rhs = r.rhs / lead;
    auto it = best.find(key);
    if (it == best.end()) {
      best.emplace(std::move(key), out.size());
      out.push_back(std::move(r));
      continue;
    }
    WorkRow& kept = out[it->second];
    Rat kept_lead;
    for (const auto& c : kept.coeffs)
      if (!c.is_zero()) {
        kept_lead = c.abs();
        break;
      }
    const Rat kept_rhs = kept.rhs / kept_lead;
    if (scaled_rhs > kept_rhs || (scaled_rhs == kept_rhs && r.strict && !kept.strict)) kept = std::move(r);
  }
  return out;
}

Infeasible certificate_from(const LinearSystem& sys, QVector multipliers) {
  // Scale to coprime integers for readability; positivity is preserved.
  Row scaled = canonical_row(Row{multipliers, Rat(0), Relation::Geq, {}, {}});
  InfeasibilityCertificate cert{std::move(scaled.coeffs), {}};
  cert.derived = combine_rows(sys, cert.multipliers);
  cert.derived.provenance = "certificate";
  return Infeasible{std::move(cert)};
}

struct Stage {
  std::size_t var;
  std::vector<WorkRow> rows;  // rows mentioning var at the time it was eliminated
};

Rat evaluate(const QVector& coeffs, const QVector& point, std::size_t skip) {
  Rat acc;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (i != skip && !coeffs[i].is_zero() && !point[i].is_zero()) acc += coeffs[i] * point[i];
  return acc;
}

}  // namespace

LinearSystem fourier_motzkin_eliminate(const LinearSystem& sys, const std::string& var) {
  const auto idx = sys.index_of(var);
  if (!idx) throw UnknownVariable("cannot eliminate unknown variable '" + var + "'");
  const std::size_t k = *idx;

  LinearSystem out;
  for (std::size_t i = 0; i < sys.variables.size(); ++i)
    if (i != k) out.variables.push_back(sys.variables[i]);

  auto drop_var = [k](const QVector& v) {
    QVector w;
    w.reserve(v.size() - 1);
    for (std::size_t i = 0; i < v.size(); ++i)
      if (i != k) w.push_back(v[i]);
    return w;
  };
  auto keep = [&](Row r) {
    if (r.is_zero_row() && !contradicts(r.rhs, r.strict())) return;
    out.rows.push_back(std::move(r));
  };

  std::vector<std::size_t> pos, neg;
  for (std::size_t i = 0; i < sys.rows.size(); ++i) {
    const Rat& c = sys.rows[i].coeffs.at(k);
    if (c.sign() > 0) pos.push_back(i);
    else if (c.sign() < 0) neg.push_back(i);
    else {
      Row r = sys.rows[i];
      r.coeffs = drop_var(r.coeffs);
      r.parents = {{i, Rat(1)}};
      keep(std::move(r));
    }
  }
  for (std::size_t p : pos) {
    for (std::size_t n : neg) {
      const Row& rp = sys.rows[p];
      const Row& rn = sys.rows[n];
      const Rat kp = rp.coeffs[k].reciprocal();
      const Rat kn = (-rn.coeffs[k]).reciprocal();
      Row r;
      r.coeffs.resize(sys.variables.size());
      for (std::size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] = rp.coeffs[i] * kp + rn.coeffs[i] * kn;
      r.coeffs = drop_var(r.coeffs);
      r.rhs = rp.rhs * kp + rn.rhs * kn;
      r.rel = (rp.strict() || rn.strict()) ? Relation::Gt : Relation::Geq;
      r.parents = {{p, kp}, {n, kn}};
      r.provenance = "eliminate " + var + ": " + kp.str() + "*r" + std::to_string(p) + " + " + kn.str() + "*r" +
                     std::to_string(n);
      keep(std::move(r));
    }
  }
  return out;
}

FeasibilityResult check_feasibility(const LinearSystem& sys, const FeasibilityOptions& options) {
  const std::size_t nvars = sys.variables.size();
  const std::size_t nrows = sys.rows.size();

  std::vector<WorkRow> rows;
  rows.reserve(nrows);
  for (std::size_t i = 0; i < nrows; ++i) {
    const Row& r = sys.rows[i];
    if (r.coeffs.size() != nvars) throw DimensionMismatch("row " + std::to_string(i) + " has wrong length");
    WorkRow w{r.coeffs, r.rhs, r.strict(), QVector(nrows)};
    w.origin[i] = 1;
    rows.push_back(std::move(w));
  }

  std::vector<std::size_t> forced;
  for (const auto& name : options.order) {
    auto idx = sys.index_of(name);
    if (!idx) throw UnknownVariable("elimination order names unknown variable '" + name + "'");
    forced.push_back(*idx);
  }

  std::vector<bool> eliminated(nvars, false);
  std::vector<Stage> stages;
  std::size_t forced_pos = 0;

  for (;;) {
    // Settle rows with no variables left.
    std::vector<WorkRow> live;
    for (auto& r : rows) {
      if (!r.zero()) {
        live.push_back(std::move(r));
        continue;
      }
      if (contradicts(r.rhs, r.strict)) return certificate_from(sys, r.origin);
    }
    rows = options.prune ? prune(std::move(live)) : std::move(live);

    std::optional<std::size_t> pick;
    while (forced_pos < forced.size() && eliminated[forced[forced_pos]]) ++forced_pos;
    if (forced_pos < forced.size()) {
      pick = forced[forced_pos];
    } else {
      std::size_t best_cost = 0;
      for (std::size_t v = 0; v < nvars; ++v) {
        if (eliminated[v]) continue;
        std::size_t p = 0, n = 0;
        for (const auto& r : rows) {
          if (r.coeffs[v].sign() > 0) ++p;
          else if (r.coeffs[v].sign() < 0) ++n;
        }
        const std::size_t cost = p * n;
        if (!pick || cost < best_cost) {
          pick = v;
          best_cost = cost;
        }
      }
    }
    if (!pick) break;
    const std::size_t v = *pick;
    eliminated[v] = true;

    Stage stage{v, {}};
    std::vector<WorkRow> pos, neg, next;
    for (auto& r : rows) {
      const int s = r.coeffs[v].sign();
      if (s == 0) next.push_back(std::move(r));
      else {
        stage.rows.push_back(r);
        (s > 0 ? pos : neg).push_back(std::move(r));
      }
    }
    for (const auto& p : pos)
      for (const auto& n : neg) {
        WorkRow c = combine(p, p.coeffs[v].reciprocal(), n, (-n.coeffs[v]).reciprocal());
        c.coeffs[v] = 0;
        next.push_back(std::move(c));
      }
    stages.push_back(std::move(stage));
    rows = std::move(next);
  }

  // Every remaining row is "0 rel rhs" and true. Rebuild a point in reverse.
  QVector point(nvars);
  for (auto it = stages.rbegin(); it != stages.rend(); ++it) {
    const std::size_t v = it->var;
    std::optional<Rat> lo, hi;
    bool lo_strict = false, hi_strict = false;
    for (const auto& r : it->rows) {
      const Rat bound = (r.rhs - evaluate(r.coeffs, point, v)) / r.coeffs[v];
      if (r.coeffs[v].sign() > 0) {
        if (!lo || bound > *lo || (bound == *lo && r.strict)) {
          lo_strict = (lo && bound == *lo) ? (lo_strict || r.strict) : r.strict;
          lo = bound;
        }
      } else {
        if (!hi || bound < *hi || (bound == *hi && r.strict)) {
          hi_strict = (hi && bound == *hi) ? (hi_strict || r.strict) : r.strict;
          hi = bound;
        }
      }
    }
    if (lo && hi) point[v] = (*lo == *hi) ? *lo : (*lo + *hi) / Rat(2);
    else if (lo) point[v] = lo_strict ? *lo + Rat(1) : *lo;
    else if (hi) point[v] = hi_strict ? *hi - Rat(1) : *hi;
    else point[v] = 0;
  }
  if (!sys.satisfied_by(point))
    throw std::logic_error("internal error: reconstructed point violates the system");
  return Feasible{std::move(point)};
}

Row combine_rows(const LinearSystem& sys, const QVector& multipliers) {
  if (multipliers.size() != sys.rows.size())
    throw DimensionMismatch("certificate has " + std::to_string(multipliers.size()) + " multipliers for " +
                            std::to_string(sys.rows.size()) + " rows");
  Row out;
  out.coeffs.assign(sys.variables.size(), Rat());
  bool strict = false;
  for (std::size_t i = 0; i < multipliers.size(); ++i) {
    const Rat& k = multipliers[i];
    if (k.is_zero()) continue;
    const Row& r = sys.rows[i];
    if (r.coeffs.size() != out.coeffs.size()) throw DimensionMismatch("row " + std::to_string(i) + " has wrong length");
    for (std::size_t j = 0; j < out.coeffs.size(); ++j) out.coeffs[j] += k * r.coeffs[j];
    out.rhs += k * r.rhs;
    if (k.sign() > 0 && r.strict()) strict = true;
  }
  out.rel = strict ? Relation::Gt : Relation::Geq;
  return out;
}

bool replay_certificate(const LinearSystem& sys, const InfeasibilityCertificate& cert) {
  const Row derived = combine_rows(sys, cert.multipliers);
  for (const auto& k : cert.multipliers)
    if (k.sign() < 0) return false;
  if (!derived.is_zero_row()) return false;
  return contradicts(derived.rhs, derived.strict());
}

}  // namespace lct
