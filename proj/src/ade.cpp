#include "lct/ade.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "lct/errors.hpp"

namespace lct {

AdeType AdeType::parse(std::string_view text) {
  const std::string original(text);
  if (text.empty()) throw UnsupportedType("empty singularity type");
  AdeType t;
  switch (std::toupper(static_cast<unsigned char>(text.front()))) {
    case 'A': t.family = Family::A; break;
    case 'D': t.family = Family::D; break;
    case 'E': t.family = Family::E; break;
    default: throw UnsupportedType("unknown singularity type '" + original + "'");
  }
  text.remove_prefix(1);
  if (text.starts_with('_')) text.remove_prefix(1);
  int rank = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), rank);
  if (ec != std::errc() || end != text.data() + text.size() || text.empty())
    throw UnsupportedType("unknown singularity type '" + original + "'");
  t.rank = rank;
  check_supported(t);
  return t;
}

std::string AdeType::name() const {
  const char f = family == Family::A ? 'A' : family == Family::D ? 'D' : 'E';
  return f + std::to_string(rank);
}

void check_supported(const AdeType& t) {
  bool ok = false;
  switch (t.family) {
    case Family::A: ok = t.rank >= 1; break;
    case Family::D: ok = t.rank >= 4; break;
    case Family::E: ok = t.rank == 6; break;
  }
  if (!ok) throw UnsupportedType("unsupported singularity type " + t.name());
}

QMatrix cartan_matrix(const AdeType& t) {
  check_supported(t);
  const auto n = static_cast<std::size_t>(t.rank);
  QMatrix c(n, n);
  auto edge = [&c](std::size_t i, std::size_t j) {
    c(i, j) = -1;
    c(j, i) = -1;
  };
  for (std::size_t i = 0; i < n; ++i) c(i, i) = 2;
  switch (t.family) {
    case Family::A:
      for (std::size_t i = 0; i + 1 < n; ++i) edge(i, i + 1);
      break;
    case Family::D: {
      const std::size_t fork = n - 1;
      edge(0, fork);
      edge(1, fork);
      edge(n - 2, fork);
      for (std::size_t i = 2; i + 1 < n - 1; ++i) edge(i, i + 1);
      break;
    }
    case Family::E:
      for (std::size_t i = 0; i + 1 < 5; ++i) edge(i, i + 1);
      edge(2, 5);
      break;
  }
  return c;
}

ResolutionLattice::ResolutionLattice(AdeType t) : type_(t), cartan_(cartan_matrix(t)) {
  for (int i = 1; i <= t.rank; ++i) nodes_.push_back("E" + std::to_string(i));
}

PullbackVector pullback_coefficients(const ResolutionLattice& lattice, const std::vector<int>& incidence,
                                     const std::string& curve) {
  if (incidence.size() != static_cast<std::size_t>(lattice.rank()))
    throw DimensionMismatch("incidence vector of length " + std::to_string(incidence.size()) + " for " +
                            lattice.type().name());
  QVector b;
  for (int v : incidence) {
    if (v < 0) throw DimensionMismatch("negative incidence");
    b.emplace_back(v);
  }
  return {curve, solve_linear_system(lattice.cartan(), b), incidence};
}

std::vector<Affine> exceptional_nef_rows(const ResolutionLattice& lattice, const std::vector<std::string>& vars) {
  if (vars.size() != static_cast<std::size_t>(lattice.rank()))
    throw DimensionMismatch("need one variable per exceptional curve");
  std::vector<Affine> out;
  const QMatrix& c = lattice.cartan();
  for (std::size_t j = 0; j < vars.size(); ++j) {
    Affine form;
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (!c(j, i).is_zero()) form += Affine::variable(vars[i]) * c(j, i);
    out.push_back(std::move(form));
  }
  return out;
}

std::map<std::string, DivisorData> tower_log_discrepancy(const std::vector<BlowupStep>& tower,
                                                         const std::map<std::string, DivisorData>& exceptional,
                                                         const std::map<std::string, Rat>& boundary) {
  std::map<std::string, DivisorData> out = exceptional;
  for (const auto& step : tower) {
    if (step.name.empty()) throw MalformedTower("blowup step without a name");
    if (out.contains(step.name) || boundary.contains(step.name))
      throw MalformedTower("divisor name '" + step.name + "' reused");
    for (const auto& [curve, mult] : step.multiplicity) {
      if (std::find(step.through.begin(), step.through.end(), curve) == step.through.end())
        throw MalformedTower("step " + step.name + " gives a multiplicity for '" + curve + "' not through the point");
      if (mult.sign() < 0) throw MalformedTower("negative multiplicity in step " + step.name);
    }
    DivisorData f{Rat(1), Rat(0)};
    for (const auto& id : step.through) {
      if (auto e = out.find(id); e != out.end()) {
        f.a += e->second.a;
        f.ord += e->second.ord;
      } else if (auto c = boundary.find(id); c != boundary.end()) {
        auto m = step.multiplicity.find(id);
        f.ord += c->second * (m == step.multiplicity.end() ? Rat(1) : m->second);
      } else {
        throw MalformedTower("step " + step.name + " references unknown divisor '" + id + "'");
      }
    }
    out.emplace(step.name, f);
  }
  return out;
}

}  // namespace lct
