#include "lct/equivariant.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "lct/errors.hpp"

namespace lct {

namespace {

using Perm = std::vector<std::size_t>;

Perm compose(const Perm& g, const Perm& h) {  // apply h, then g
  Perm out(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) out[i] = g[h[i]];
  return out;
}

// Closure of the generators under composition. The groups handled here have
// at most a few hundred elements, so plain breadth-first search suffices.
std::set<Perm> closure(const std::vector<Perm>& gens, std::size_t n) {
  Perm id(n);
  for (std::size_t i = 0; i < n; ++i) id[i] = i;
  std::set<Perm> seen{id};
  std::deque<Perm> queue{id};
  while (!queue.empty()) {
    const Perm p = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      Perm q = compose(g, p);
      if (seen.insert(q).second) queue.push_back(std::move(q));
    }
  }
  return seen;
}

std::vector<Perm> restricted_generators(const GroupAction& action, const std::vector<std::string>& subset) {
  std::map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < subset.size(); ++i) pos[subset[i]] = i;
  std::vector<Perm> gens;
  for (std::size_t g = 0; g < action.generators.size(); ++g) {
    Perm p(subset.size());
    for (std::size_t i = 0; i < subset.size(); ++i) {
      const std::string& img = action.image(g, subset[i]);
      auto it = pos.find(img);
      if (it == pos.end())
        throw NotAPermutation("generator " + std::to_string(g) + " of " + action.group_name + " maps " + subset[i] +
                              " to " + img + ", outside the set");
      p[i] = it->second;
    }
    gens.push_back(std::move(p));
  }
  return gens;
}

std::string join(const std::vector<std::string>& items, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
  return out;
}

}  // namespace

GroupAction GroupAction::from_spec(const GroupSpec& spec, std::vector<std::string> labels) {
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  GroupAction a;
  a.group_name = spec.name;
  a.declared_order = spec.order;
  a.faithful = spec.faithful;
  a.labels = labels;
  for (std::size_t g = 0; g < spec.generators.size(); ++g) {
    Perm p(labels.size());
    std::vector<bool> hit(labels.size(), false);
    for (std::size_t i = 0; i < labels.size(); ++i) {
      auto it = spec.generators[g].find(labels[i]);
      const std::string& img = it == spec.generators[g].end() ? labels[i] : it->second;
      auto pos = std::lower_bound(labels.begin(), labels.end(), img);
      if (pos == labels.end() || *pos != img)
        throw NotAPermutation("generator " + std::to_string(g) + " maps " + labels[i] + " to unknown label " + img);
      p[i] = static_cast<std::size_t>(pos - labels.begin());
      if (hit[p[i]]) throw NotAPermutation("generator " + std::to_string(g) + " sends two labels to " + img);
      hit[p[i]] = true;
    }
    for (const auto& [from, to] : spec.generators[g])
      if (!std::binary_search(labels.begin(), labels.end(), from))
        throw NotAPermutation("generator " + std::to_string(g) + " moves " + from + ", which is not acted on");
    a.generators.push_back(std::move(p));
  }
  return a;
}

GroupAction GroupAction::trivial() const {
  GroupAction t;
  t.group_name = "trivial";
  t.labels = labels;
  t.declared_order = 1;
  return t;
}

std::size_t GroupAction::index(const std::string& label) const {
  auto pos = std::lower_bound(labels.begin(), labels.end(), label);
  if (pos == labels.end() || *pos != label) throw DanglingReference("label '" + label + "' is not acted on by " + group_name);
  return static_cast<std::size_t>(pos - labels.begin());
}

const std::string& GroupAction::image(std::size_t generator, const std::string& label) const {
  return labels[generators.at(generator)[index(label)]];
}

std::size_t generated_order(const GroupAction& action) {
  return closure(action.generators, action.labels.size()).size();
}

std::size_t image_order(const GroupAction& action, const std::vector<std::string>& subset) {
  return closure(restricted_generators(action, subset), subset.size()).size();
}

std::vector<std::vector<std::string>> orbit_partition(const GroupAction& action, const std::vector<std::string>& set) {
  std::vector<std::string> elems = set;
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  const auto gens = restricted_generators(action, elems);
  std::vector<bool> done(elems.size(), false);
  std::vector<std::vector<std::string>> orbits;
  for (std::size_t start = 0; start < elems.size(); ++start) {
    if (done[start]) continue;
    std::vector<std::size_t> orbit{start};
    done[start] = true;
    for (std::size_t k = 0; k < orbit.size(); ++k)
      for (const auto& g : gens)
        if (!done[g[orbit[k]]]) {
          done[g[orbit[k]]] = true;
          orbit.push_back(g[orbit[k]]);
        }
    std::sort(orbit.begin(), orbit.end());
    std::vector<std::string> names;
    for (std::size_t i : orbit) names.push_back(elems[i]);
    orbits.push_back(std::move(names));
  }
  // elems is sorted and orbits are opened at their least element, so they
  // already come out ordered by least label.
  return orbits;
}

bool is_invariant(const GroupAction& action, const BoundaryDivisor& divisor) {
  const BoundaryDivisor d = divisor.normalized();
  for (std::size_t g = 0; g < action.generators.size(); ++g)
    for (const auto& t : d.terms)
      if (d.multiplicity(action.image(g, t.curve)) != t.multiplicity) return false;
  return true;
}

Rat invariant_upper_bound(const GroupAction& action, const SurfaceModel& model, const BoundaryDivisor& divisor) {
  const BoundaryDivisor d = divisor.normalized();
  if (!is_invariant(action, d)) throw Inconsistent(d.str() + " is not invariant under " + action.group_name);
  for (const auto& c : model.curves) {
    Rat dot;
    for (const auto& t : d.terms) dot += t.multiplicity * model.intersection(t.curve, c.id);
    if (dot != Rat(c.degree))
      throw Inconsistent(d.str() + " is not anticanonical: intersection with " + c.id + " is " + dot.str());
  }
  Rat top;
  bool reduced = false;
  for (const auto& t : d.terms) {
    if (t.multiplicity == Rat(1)) reduced = true;
    if (t.multiplicity > top) top = t.multiplicity;
  }
  if (!reduced) throw NoReducedComponent(d.str() + " has no component of multiplicity 1");
  return top.reciprocal();
}

LineConfiguration LineConfiguration::from_fixture(const CaseFixture& f) {
  LineConfiguration c;
  for (const auto& curve : f.model.curves)
    if (curve.degree == 1) c.lines.push_back(curve.id);
  std::sort(c.lines.begin(), c.lines.end());
  if (f.elimination) {
    c.conic_residual_pairs = f.elimination->conic_residual_pairs;
  } else {
    for (const auto& l : c.lines) c.conic_residual_pairs.emplace_back("conics residual to " + l, l);
  }
  return c;
}

EliminationTrace eliminate_invariant_curves(const GroupAction& action, const LineConfiguration& config,
                                            int max_degree) {
  EliminationTrace trace;
  trace.line_orbits = orbit_partition(action, config.lines);
  std::vector<std::string> sizes;
  const std::vector<std::string>* smallest = nullptr;
  for (const auto& o : trace.line_orbits) {
    sizes.push_back(std::to_string(o.size()));
    if (!smallest || o.size() < smallest->size()) smallest = &o;
  }
  trace.steps.push_back("line orbits have sizes " + join(sizes, ", "));
  if (smallest) {
    trace.smallest_line_orbit = smallest->size();
    // An invariant union of lines is a union of orbits, so its degree is at
    // least the smallest orbit size.
    if (static_cast<int>(smallest->size()) <= max_degree)
      throw EliminationFails(join(*smallest, " + "), "invariant union of lines " + join(*smallest, " + ") +
                                                         " has degree " + std::to_string(smallest->size()));
    trace.steps.push_back("every invariant union of lines has degree >= " + std::to_string(smallest->size()) +
                          " > " + std::to_string(max_degree));
  }
  if (max_degree >= 2) {
    std::map<std::string, std::size_t> orbit_size;
    for (const auto& o : trace.line_orbits)
      for (const auto& l : o) orbit_size[l] = o.size();
    for (const auto& [conic, line] : config.conic_residual_pairs) {
      auto it = orbit_size.find(line);
      if (it == orbit_size.end()) throw DanglingReference("residual line '" + line + "' is not a line of the surface");
      if (it->second == 1)
        throw EliminationFails(conic, "an invariant conic in " + conic + " would leave the invariant residual line " + line);
    }
    trace.steps.push_back("no line is fixed, so no irreducible conic is invariant (" +
                          std::to_string(config.conic_residual_pairs.size()) + " conic families checked)");
  }
  return trace;
}

GroupAction fixture_action(const CaseFixture& fixture) {
  if (!fixture.group) throw ParseError(fixture.source, "fixture has no group block");
  std::vector<std::string> labels = fixture.group->labels;
  if (labels.empty()) {
    for (const auto& c : fixture.model.curves) labels.push_back(c.id);
    for (const auto& p : fixture.model.points) labels.push_back(p.id);
  }
  return GroupAction::from_spec(*fixture.group, std::move(labels));
}

InvariantResult invariant_threshold(const CaseFixture& fixture, const std::optional<GroupAction>& override_action) {
  const GroupAction action = override_action ? *override_action : fixture_action(fixture);
  InvariantResult r;
  r.name = fixture.name;
  r.source = fixture.source;
  r.group = action.group_name;
  r.expected = fixture.expected_omega;
  r.assumptions = fixture.assumptions;
  r.findings = validate_fixture(fixture);

  const LineConfiguration config = LineConfiguration::from_fixture(fixture);
  r.order = generated_order(action);
  r.line_order = image_order(action, config.lines);
  const auto declared = static_cast<std::size_t>(action.declared_order);
  r.order_ok = action.faithful ? r.order == declared : declared % r.order == 0;
  if (!r.order_ok)
    r.findings.push_back("generated order " + std::to_string(r.order) + " does not match declared order " +
                         std::to_string(action.declared_order));

  if (!fixture.invariant_divisor) throw ParseError(fixture.source, "fixture has no invariant_divisor");
  r.upper = invariant_upper_bound(action, fixture.model, *fixture.invariant_divisor);

  try {
    r.trace = eliminate_invariant_curves(action, config);
  } catch (const EliminationFails& e) {
    r.survivor = e.candidate();
  }
  // With no invariant curve of degree < 3 in the non-lc locus, an invariant
  // D with (S, λD) not lc forces λ ≥ 1; together with the upper bound 1
  // this pins the value.
  if (r.trace && r.upper == Rat(1)) {
    r.lct = r.upper;
    r.ke = ke_criterion(*r.lct, 2);
  }
  r.verified = r.findings.empty() && r.lct && (!r.expected || *r.lct == *r.expected);
  return r;
}

}  // namespace lct
