#include "linkpack/diagrams.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace linkpack {

namespace {

constexpr std::size_t kMaxWordLength = 20'000'000;

/// Minimal union-find over edge labels.
class Partition {
 public:
  int find(int x) {
    auto it = parent_.find(x);
    if (it == parent_.end()) {
      parent_[x] = x;
      return x;
    }
    if (it->second == x) return x;
    const int root = find(it->second);
    parent_[x] = root;
    return root;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::map<int, int> parent_;
};

int over_in(const PDCrossing& x) { return x.sign > 0 ? x.edges[3] : x.edges[1]; }
int over_out(const PDCrossing& x) { return x.sign > 0 ? x.edges[1] : x.edges[3]; }

}  // namespace

// ---------------------------------------------------------------------------
// PDCode

PDCode::PDCode(std::vector<PDCrossing> crossings, const std::map<int, int>& assigned)
    : crossings_(std::move(crossings)) {
  std::map<int, int> occurrences;
  std::map<int, int> incoming_count, outgoing_count;
  for (std::size_t xi = 0; xi < crossings_.size(); ++xi) {
    const PDCrossing& x = crossings_[xi];
    if (x.sign != 1 && x.sign != -1) throw PreconditionError("PD: crossing sign must be +-1");
    for (int e : x.edges) {
      if (e <= 0) throw PreconditionError("PD: edge labels must be positive");
      ++occurrences[e];
    }
    const int in_under = x.edges[0], out_under = x.edges[2];
    next_[in_under] = out_under;
    head_[in_under] = {static_cast<int>(xi), true};
    next_[over_in(x)] = over_out(x);
    head_[over_in(x)] = {static_cast<int>(xi), false};
    ++incoming_count[in_under];
    ++incoming_count[over_in(x)];
    ++outgoing_count[out_under];
    ++outgoing_count[over_out(x)];
  }
  for (const auto& [e, n] : occurrences) {
    if (n != 2) {
      throw PreconditionError("PD: edge " + std::to_string(e) + " appears " + std::to_string(n) +
                              " times (expected 2)");
    }
    if (incoming_count[e] != 1 || outgoing_count[e] != 1) {
      throw PreconditionError("PD: edge " + std::to_string(e) + " has inconsistent orientation");
    }
  }
  for (const auto& [e, comp] : assigned) {
    if (!occurrences.count(e)) {
      // A crossing-free component consists of a single closed edge.
      next_[e] = e;
    }
  }

  Partition strands;
  for (const auto& [e, n] : next_) strands.unite(e, n);
  for (const auto& [e, n] : next_) edges_.push_back(e);

  std::map<int, int> class_component;
  for (const auto& [e, comp] : assigned) {
    if (comp < 1) throw PreconditionError("PD: component ids start at 1");
    const int root = strands.find(e);
    auto [it, inserted] = class_component.emplace(root, comp);
    if (!inserted && it->second != comp) {
      throw PreconditionError("PD: edge " + std::to_string(e) +
                              " assigned to a component inconsistent with its strand");
    }
  }
  std::set<int> ids;
  for (int e : edges_) {
    auto it = class_component.find(strands.find(e));
    if (it == class_component.end()) {
      throw PreconditionError("PD: no component assigned to the strand of edge " +
                              std::to_string(e));
    }
    edge_component_[e] = it->second;
    ids.insert(it->second);
  }
  std::set<int> roots;
  for (int e : edges_) roots.insert(strands.find(e));
  if (roots.size() != ids.size()) {
    throw PreconditionError("PD: two strands share a component id");
  }
  components_ = static_cast<int>(ids.size());
  if (!ids.empty() && (*ids.begin() != 1 || *ids.rbegin() != components_)) {
    throw PreconditionError("PD: component ids must be 1..K");
  }
}

std::optional<std::pair<int, bool>> PDCode::head(int edge) const {
  auto it = head_.find(edge);
  if (it == head_.end()) return std::nullopt;
  return it->second;
}

PDCode PDCode::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<PDCrossing> crossings;
  std::map<int, int> assigned;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    auto fail = [&] {
      throw PreconditionError("PD: cannot parse line " + std::to_string(lineno) + ": '" + line + "'");
    };
    if (tag == "X") {
      std::string edges, sign;
      if (!(ls >> edges >> sign)) fail();
      PDCrossing x;
      std::replace(edges.begin(), edges.end(), ',', ' ');
      std::istringstream es(edges);
      for (int& e : x.edges) {
        if (!(es >> e)) fail();
      }
      std::string extra;
      if (es >> extra) fail();
      if (sign == "+") {
        x.sign = 1;
      } else if (sign == "-") {
        x.sign = -1;
      } else {
        fail();
      }
      crossings.push_back(x);
    } else if (tag == "C") {
      int edge = 0, comp = 0;
      if (!(ls >> edge >> comp)) fail();
      assigned[edge] = comp;
    } else {
      fail();
    }
  }
  return PDCode(std::move(crossings), assigned);
}

std::string PDCode::to_text() const {
  std::ostringstream os;
  for (const auto& x : crossings_) {
    os << "X " << x.edges[0] << ',' << x.edges[1] << ',' << x.edges[2] << ',' << x.edges[3] << ' '
       << (x.sign > 0 ? '+' : '-') << '\n';
  }
  for (int e : edges_) os << "C " << e << ' ' << edge_component_.at(e) << '\n';
  return os.str();
}

// ---------------------------------------------------------------------------
// Wirtinger presentation and longitudes

namespace {

struct Traversal {
  Word longitude;                   // f_n ... f_1, before framing correction
  int self_writhe = 0;
  std::vector<std::pair<int, Word>> arcs;  // arc id -> conjugator, in order reached
};

Traversal traverse(const PDCode& pd, const std::map<int, int>& edge_arc, int component) {
  int start = -1;
  for (int e : pd.edges()) {
    if (pd.component_of(e) == component) {
      start = e;
      break;
    }
  }
  if (start < 0) throw PreconditionError("longitude: no component " + std::to_string(component));
  Traversal t;
  Word conj;
  int e = start;
  do {
    const auto head = pd.head(e);
    const int next = pd.next_edge(e);
    if (head && head->second) {
      const PDCrossing& x = pd.crossings()[head->first];
      const int over_edge = x.edges[1];
      const Word factor = Word::generator(edge_arc.at(over_edge), x.sign);
      t.longitude = factor * t.longitude;
      conj = factor * conj;
      if (pd.component_of(over_edge) == component) t.self_writhe += x.sign;
      t.arcs.emplace_back(edge_arc.at(next), conj);
    }
    e = next;
  } while (e != start);
  return t;
}

}  // namespace

Presentation wirtinger(const PDCode& pd) {
  Partition arcs;
  for (int e : pd.edges()) arcs.find(e);
  for (const auto& x : pd.crossings()) arcs.unite(x.edges[1], x.edges[3]);

  Presentation pres;
  std::map<int, int> root_to_arc;
  for (int e : pd.edges()) {  // sorted, so arcs are numbered by their lowest edge
    const int root = arcs.find(e);
    auto [it, inserted] = root_to_arc.emplace(root, static_cast<int>(root_to_arc.size()) + 1);
    pres.edge_arc[e] = it->second;
  }
  pres.generator_count = static_cast<int>(root_to_arc.size());
  pres.arc_component.assign(pres.generator_count + 1, 0);
  for (const auto& [e, a] : pres.edge_arc) pres.arc_component[a] = pd.component_of(e);

  for (const auto& x : pd.crossings()) {
    const Word y_in = Word::generator(pres.edge_arc.at(x.edges[0]));
    const Word y_out = Word::generator(pres.edge_arc.at(x.edges[2]));
    const Word over = Word::generator(pres.edge_arc.at(x.edges[1]), x.sign);
    pres.relations.push_back(y_out.inverse() * over * y_in * over.inverse());
  }

  pres.arc_conjugators.assign(pres.generator_count + 1, Word());
  std::vector<char> seen(pres.generator_count + 1, 0);
  for (int c = 1; c <= pd.component_count(); ++c) {
    int base_edge = -1;
    for (int e : pd.edges()) {
      if (pd.component_of(e) == c) {
        base_edge = e;
        break;
      }
    }
    const int base = pres.edge_arc.at(base_edge);
    pres.base_meridians.push_back(base);
    seen[base] = 1;
    for (const auto& [arc, conj] : traverse(pd, pres.edge_arc, c).arcs) {
      if (seen[arc]) continue;
      seen[arc] = 1;
      pres.arc_conjugators[arc] = conj;
    }
  }
  return pres;
}

Word longitude_word(const PDCode& pd, const Presentation& pres, int component) {
  if (component < 1 || component > pd.component_count()) {
    throw PreconditionError("longitude_word: no component " + std::to_string(component));
  }
  const Traversal t = traverse(pd, pres.edge_arc, component);
  const int base = pres.base_meridians[component - 1];
  return t.longitude * Word::generator(base, -t.self_writhe);
}

Word longitude_word(const PDCode& pd, int component) {
  return longitude_word(pd, wirtinger(pd), component);
}

Word reduce_to_meridians(const Word& word, const Presentation& pres, int depth) {
  if (depth < 1) throw PreconditionError("reduce_to_meridians: depth must be >= 1");
  const int arcs = pres.generator_count;
  auto substitute = [&](const Word& w, const std::vector<Word>& expr) {
    Word out;
    for (const Letter& l : w.letters()) {
      if (l.generator > arcs) throw PreconditionError("reduce_to_meridians: unknown arc");
      out *= l.sign > 0 ? expr[l.generator] : expr[l.generator].inverse();
      if (out.size() > kMaxWordLength) {
        throw ResourceError("reduce_to_meridians: word length exceeds " +
                            std::to_string(kMaxWordLength) + " letters at depth " +
                            std::to_string(depth) + "; lower the depth");
      }
    }
    return out.reduced();
  };
  std::vector<Word> expr(arcs + 1);
  for (int a = 1; a <= arcs; ++a) expr[a] = Word::generator(pres.arc_component[a]);
  for (int round = 0; round < depth; ++round) {
    std::vector<Word> next(arcs + 1);
    for (int a = 1; a <= arcs; ++a) {
      const Word c = substitute(pres.arc_conjugators[a], expr);
      next[a] = conjugate(Word::generator(pres.arc_component[a]), c).reduced();
    }
    expr = std::move(next);
  }
  return substitute(word, expr);
}

// ---------------------------------------------------------------------------
// mu-bar

std::string sequence_key(std::span<const int> sequence) {
  std::string key;
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    if (i) key += ',';
    key += std::to_string(sequence[i]);
  }
  return key;
}

namespace {

BigInt mu_value(const PDCode& pd, const Presentation& pres, std::span<const int> seq) {
  const int k = static_cast<int>(seq.size());
  const Word longitude = longitude_word(pd, pres, seq.back());
  const Word meridians = reduce_to_meridians(longitude, pres, k);
  std::vector<int> variable_of(pd.component_count() + 1, 0);
  for (int i = 0; i + 1 < k; ++i) variable_of[seq[i]] = i + 1;
  const IntPoly poly = expand(meridians.relabeled(variable_of), k - 1, IntegerRing{});
  std::vector<int> monomial(k - 1);
  std::iota(monomial.begin(), monomial.end(), 1);
  return poly.coefficient(monomial);
}

}  // namespace

MuResult mu_bar(const PDCode& pd, std::span<const int> sequence,
                std::optional<std::int64_t> modulus) {
  const int k = static_cast<int>(sequence.size());
  if (k < 2) throw PreconditionError("mu_bar: need at least two indices");
  if (k - 1 > MonomialTable::kMaxVariables) throw PreconditionError("mu_bar: sequence too long");
  std::set<int> distinct(sequence.begin(), sequence.end());
  if (static_cast<int>(distinct.size()) != k) {
    throw PreconditionError("mu_bar: repeated index (non-repeating invariants only)");
  }
  for (int i : sequence) {
    if (i < 1 || i > pd.component_count()) throw PreconditionError("mu_bar: index out of range");
  }
  if (modulus && *modulus < 2) throw PreconditionError("mu_bar: modulus must be >= 2");

  const Presentation pres = wirtinger(pd);
  MuResult r;
  r.sequence.assign(sequence.begin(), sequence.end());
  r.coefficient = mu_value(pd, pres, sequence);

  // Every order-preserving sub-sequence of length 2..k-1, in all rotations.
  for (unsigned mask = 1; mask < (1u << k) - 1; ++mask) {
    std::vector<int> sub;
    for (int i = 0; i < k; ++i) {
      if (mask & (1u << i)) sub.push_back(sequence[i]);
    }
    if (sub.size() < 2) continue;
    for (std::size_t rot = 0; rot < sub.size(); ++rot) {
      std::vector<int> rotated(sub.begin() + rot, sub.end());
      rotated.insert(rotated.end(), sub.begin(), sub.begin() + rot);
      const std::string key = sequence_key(rotated);
      if (!r.lower_order.count(key)) r.lower_order[key] = mu_value(pd, pres, rotated);
    }
  }
  for (const auto& [key, value] : r.lower_order) {
    if (value != 0) r.indeterminate = true;
    r.indeterminacy = boost::multiprecision::gcd(r.indeterminacy, BigInt(abs(value)));
  }
  if (modulus) {
    r.modulus = modulus;
    BigInt m = r.coefficient % *modulus;
    if (m < 0) m += *modulus;
    r.residue = m.convert_to<std::int64_t>();
  }
  return r;
}

int diagram_linking(const PDCode& pd, int i, int j) {
  int total = 0;
  for (const auto& x : pd.crossings()) {
    if (pd.component_of(x.edges[1]) == i && pd.component_of(x.edges[0]) == j) total += x.sign;
  }
  return total;
}

// ---------------------------------------------------------------------------
// Projection of a PL link

PDCode diagram_from_link(const PLLink& link) {
  const auto& comps = link.components();
  const int K = static_cast<int>(comps.size());
  std::vector<std::vector<Segment>> segs;
  for (const auto& c : comps) segs.push_back(c.segments());

  struct Pass {
    double position;  // segment index + parameter
    int crossing;
    bool over;
  };
  struct RawCrossing {
    int sign;
    int under_comp, over_comp;
  };

  return with_generic_view([&](const Eigen::Vector3d& view) {
    std::vector<std::vector<Pass>> passes(K);
    std::vector<RawCrossing> raw;
    for (int a = 0; a < K; ++a) {
      for (int b = a; b < K; ++b) {
        for (const auto& c : projected_crossings(segs[a], segs[b], view, a == b)) {
          const int id = static_cast<int>(raw.size());
          raw.push_back({c.sign, c.a_over ? b : a, c.a_over ? a : b});
          passes[a].push_back({c.seg_a + c.s, id, c.a_over});
          passes[b].push_back({c.seg_b + c.t, id, !c.a_over});
        }
      }
    }
    // Edge labels: per component, edge j runs from pass j to pass j+1.
    std::vector<std::array<int, 4>> slots(raw.size(), std::array<int, 4>{0, 0, 0, 0});
    std::map<int, int> assigned;
    int label = 0;
    for (int c = 0; c < K; ++c) {
      auto& ps = passes[c];
      std::sort(ps.begin(), ps.end(), [](const Pass& x, const Pass& y) { return x.position < y.position; });
      const int first = label + 1;
      const int n = static_cast<int>(ps.size());
      if (n == 0) {
        assigned[++label] = c + 1;
        continue;
      }
      label += n;
      for (int j = 0; j < n; ++j) {
        const int incoming = first + (j + n - 1) % n;
        const int outgoing = first + j;
        const RawCrossing& x = raw[ps[j].crossing];
        auto& s = slots[ps[j].crossing];
        if (!ps[j].over) {
          s[0] = incoming;
          s[2] = outgoing;
        } else if (x.sign > 0) {
          s[3] = incoming;
          s[1] = outgoing;
        } else {
          s[1] = incoming;
          s[3] = outgoing;
        }
      }
      assigned[first] = c + 1;
    }
    std::vector<PDCrossing> crossings;
    crossings.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) crossings.push_back({slots[i], raw[i].sign});
    return PDCode(std::move(crossings), assigned);
  });
}

}  // namespace linkpack
