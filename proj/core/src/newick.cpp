#include "bioperf/newick.hpp"

#include <cctype>
#include <charconv>
#include <functional>
#include <vector>

#include "bioperf/csv.hpp"
#include "bioperf/error.hpp"

namespace bioperf {
namespace {

std::string quote_name(std::string_view name) {
  if (name.find_first_of("()[]':;, \t\n") == std::string_view::npos) return std::string(name);
  std::string out = "'";
  for (char c : name) {
    if (c == '\'') out.push_back('\'');
    out.push_back(c);
  }
  out.push_back('\'');
  return out;
}

}  // namespace

std::string to_newick(const PhyloTree& t) {
  if (t.nodes().empty()) return ";";
  std::vector<std::vector<std::size_t>> adj(t.nodes().size());
  for (std::size_t e = 0; e < t.edges().size(); ++e) {
    adj[t.edges()[e].a].push_back(e);
    adj[t.edges()[e].b].push_back(e);
  }

  NodeId top = 0;
  if (t.root) {
    top = *t.root;
  } else {
    for (NodeId i = 0; i < t.nodes().size(); ++i) {
      if (!t.nodes()[i].leaf) top = i;
    }
  }

  std::string out;
  std::function<void(NodeId, std::size_t)> emit = [&](NodeId n, std::size_t from_edge) {
    std::vector<std::size_t> children;
    for (std::size_t e : adj[n]) {
      if (e != from_edge) children.push_back(e);
    }
    if (!children.empty()) {
      out.push_back('(');
      for (std::size_t k = 0; k < children.size(); ++k) {
        if (k != 0) out.push_back(',');
        const auto& edge = t.edges()[children[k]];
        emit(edge.a == n ? edge.b : edge.a, children[k]);
      }
      out.push_back(')');
    }
    if (t.nodes()[n].leaf) out += quote_name(t.nodes()[n].name);
    if (from_edge != static_cast<std::size_t>(-1)) {
      out.push_back(':');
      out += csv::format_number(t.edges()[from_edge].length);
    }
  };
  emit(top, static_cast<std::size_t>(-1));
  out.push_back(';');
  return out;
}

namespace {

class NewickParser {
 public:
  explicit NewickParser(std::string_view text) : s_(text) {}

  PhyloTree parse() {
    skip_ws();
    const NodeId top = subtree();
    skip_ws();
    if (peek() == ':') {
      ++pos_;
      (void)length();
    }
    skip_ws();
    expect(';');
    skip_ws();
    if (pos_ != s_.size()) fail("trailing characters after ';'");

    // Leaves are childless nodes, plus a top node with a single child.
    PhyloTree out;
    std::size_t htu = 0;
    for (NodeId i = 0; i < names_.size(); ++i) {
      const bool leaf = children_[i] == 0 || (i == top && children_[i] == 1);
      std::string name = names_[i];
      if (name.empty()) {
        if (leaf) fail("leaf without a name");
        name = "HTU" + std::to_string(++htu);
      }
      out.add_node(std::move(name), leaf);
    }
    for (const auto& e : edges_) out.add_edge(e.a, e.b, e.length);
    if (children_[top] == 2) out.root = top;
    return out;
  }

 private:
  NodeId subtree() {
    skip_ws();
    const NodeId self = new_node();
    if (peek() == '(') {
      ++pos_;
      while (true) {
        const NodeId child = subtree();
        skip_ws();
        double len = 0.0;
        if (peek() == ':') {
          ++pos_;
          len = length();
        }
        edges_.push_back(TreeEdge{child, self, len});
        ++children_[self];
        skip_ws();
        if (peek() == ',') {
          ++pos_;
          continue;
        }
        expect(')');
        break;
      }
    }
    skip_ws();
    names_[self] = name();
    return self;
  }

  NodeId new_node() {
    names_.emplace_back();
    children_.push_back(0);
    return names_.size() - 1;
  }

  std::string name() {
    std::string out;
    if (peek() == '\'') {
      ++pos_;
      while (true) {
        if (pos_ >= s_.size()) fail("unterminated quoted name");
        const char c = s_[pos_++];
        if (c == '\'') {
          if (peek() == '\'') {
            out.push_back('\'');
            ++pos_;
          } else {
            break;
          }
        } else {
          out.push_back(c);
        }
      }
      return out;
    }
    while (pos_ < s_.size() && std::string_view("()[]':;,").find(s_[pos_]) == std::string_view::npos &&
           !std::isspace(static_cast<unsigned char>(s_[pos_]))) {
      out.push_back(s_[pos_++]);
    }
    return out;
  }

  double length() {
    skip_ws();
    const char* begin = s_.data() + pos_;
    double v = 0.0;
    auto [end, ec] = std::from_chars(begin, s_.data() + s_.size(), v);
    if (ec != std::errc{}) fail("bad branch length");
    pos_ += static_cast<std::size_t>(end - begin);
    return v;
  }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ValidationError("newick: " + msg + " at offset " + std::to_string(pos_));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::vector<std::string> names_;
  std::vector<std::size_t> children_;
  std::vector<TreeEdge> edges_;
};

}  // namespace

PhyloTree parse_newick(std::string_view text) { return NewickParser(text).parse(); }

}  // namespace bioperf
