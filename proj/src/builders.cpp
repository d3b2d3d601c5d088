#include "srw/builders.hpp"

#include <algorithm>

namespace srw {

namespace {

std::string reversed(std::string w) {
  std::reverse(w.begin(), w.end());
  return w;
}

std::vector<std::string> words(int s, int len) {
  std::vector<std::string> out{""};
  for (int l = 0; l < len; ++l) {
    std::vector<std::string> next;
    for (const auto& w : out)
      for (int a = 0; a < s; ++a) next.push_back(w + alphabet_symbol(a));
    out = std::move(next);
  }
  return out;
}

void check_alphabet(int s, int k) {
  if (s < 2 || s > 36) throw Error(ErrorCode::SizeLimit, "alphabet size must lie in [2, 36]");
  if (k < 1) throw Error(ErrorCode::SizeLimit, "order must be at least 1");
}

double power(int s, int k) {
  double p = 1;
  for (int i = 0; i < k; ++i) p *= s;
  return p;
}

}  // namespace

char alphabet_symbol(int k) { return k < 10 ? static_cast<char>('0' + k) : static_cast<char>('a' + k - 10); }

StarGraph build_de_bruijn(int s, int k, std::size_t edge_cap) {
  check_alphabet(s, k);
  if (power(s, k + 1) > static_cast<double>(edge_cap))
    throw Error(ErrorCode::SizeLimit, "de Bruijn graph exceeds the edge cap");
  GraphSpec spec;
  for (const auto& w : words(s, k)) {
    spec.vertices.push_back({w, reversed(w)});
    for (int a = 0; a < s; ++a) spec.edges.push_back({w, w.substr(1) + alphabet_symbol(a)});
  }
  return StarGraph::build(spec);
}

StarGraph build_rwde(const DirectedGraph& g1, RwdeMode mode, const VertexId& i0) {
  const bool glued = mode == RwdeMode::Glued;
  if (glued && std::find(g1.vertices.begin(), g1.vertices.end(), i0) == g1.vertices.end())
    throw Error(ErrorCode::UnknownVertex, "glue vertex '" + i0 + "' is not in the input graph");
  auto copy = [&](const VertexId& v) { return glued && v == i0 ? v : v + "*"; };
  GraphSpec spec;
  for (const auto& v : g1.vertices) {
    if (glued && v == i0) {
      spec.vertices.push_back({v, v});
    } else {
      spec.vertices.push_back({v, v + "*"});
      spec.vertices.push_back({v + "*", v});
    }
  }
  for (const auto& [a, b] : g1.edges) {
    spec.edges.push_back({a, b});
    spec.edges.push_back({copy(b), copy(a)});
  }
  return StarGraph::build(spec, false);
}

StarGraph build_amnesia(int s, int k, std::size_t edge_cap) {
  check_alphabet(s, k);
  double n_edges = 0;
  for (int m = 1; m <= k; ++m) n_edges += power(s, m) * ((m > 1) + (m < k) * s);
  if (n_edges > static_cast<double>(edge_cap)) throw Error(ErrorCode::SizeLimit, "amnesia graph exceeds the edge cap");
  GraphSpec spec;
  for (int m = 1; m <= k; ++m) {
    for (const auto& w : words(s, m)) {
      spec.vertices.push_back({w, reversed(w)});
      if (m > 1) spec.edges.push_back({w, w.substr(1)});
      if (m < k)
        for (int a = 0; a < s; ++a) spec.edges.push_back({w, w + alphabet_symbol(a)});
    }
  }
  return StarGraph::build(spec);
}

std::set<std::string> missing_context_words(const StarGraph& g, const std::set<std::string>& contexts) {
  std::set<std::string> missing;
  for (const auto& x : contexts) {
    if (!contexts.count(reversed(x))) missing.insert(reversed(x));
    for (Index v = 0; v < g.vertex_count(); ++v) {
      const auto& y = g.id(v);
      if (y.size() > x.size() && y.compare(0, x.size(), x) == 0 && !contexts.count(y)) missing.insert(y);
    }
  }
  // Reversal closure of the words demanded so far.
  std::set<std::string> more;
  for (const auto& y : missing)
    if (!contexts.count(reversed(y)) && !missing.count(reversed(y))) more.insert(reversed(y));
  missing.insert(more.begin(), more.end());
  return missing;
}

StarGraph restrict_variable_order(const StarGraph& g, const std::set<std::string>& contexts, PruneComparison cmp) {
  for (const auto& x : contexts)
    if (!g.find(x)) throw Error(ErrorCode::UnknownVertex, "context word '" + x + "' is not a vertex");
  auto missing = missing_context_words(g, contexts);
  if (!missing.empty()) {
    std::string list;
    for (const auto& w : missing) list += (list.empty() ? "" : ", ") + w;
    throw Error(ErrorCode::ContextNotClosed, "missing {" + list + "}");
  }

  auto pruned = [&](const std::string& w) {
    for (const auto& x : contexts) {
      bool length_ok = cmp == PruneComparison::Shorter ? x.size() < w.size() : x.size() <= w.size();
      if (length_ok && w.compare(w.size() - x.size(), x.size(), x) == 0) return true;
    }
    return false;
  };

  std::vector<bool> drop(g.edge_count(), false);
  for (Index e = 0; e < g.edge_count(); ++e) {
    const auto& t = g.id(g.edge(e).tail);
    const auto& h = g.id(g.edge(e).head);
    bool append = h.size() == t.size() + 1 && h.compare(0, t.size(), t) == 0;
    if (append && pruned(t)) drop[e] = drop[g.mirror(e)] = true;
  }

  std::vector<bool> used(g.vertex_count(), false);
  GraphSpec spec;
  for (Index e = 0; e < g.edge_count(); ++e) {
    if (drop[e]) continue;
    used[g.edge(e).tail] = used[g.edge(e).head] = true;
    spec.edges.push_back({g.id(g.edge(e).tail), g.id(g.edge(e).head)});
  }
  for (Index v = 0; v < g.vertex_count(); ++v)
    if (used[v] || used[g.star(v)]) spec.vertices.push_back({g.id(v), g.id(g.star(v))});
  return StarGraph::build(spec);
}

}  // namespace srw
