#include "treecompat/newick.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "treecompat/errors.hpp"

namespace treecompat {

namespace {

// Rooted parse product; converted to an unrooted PhyloTree afterwards.
struct RawNode {
    std::string name;
    std::vector<int> children;
};

class Parser {
public:
    explicit Parser(const std::string& text) : text_(text) {}

    int parse_root() {
        int root = parse_node();
        skip_space();
        expect(';');
        skip_space();
        if (pos_ != text_.size()) fail("trailing characters after ';'");
        return root;
    }

    std::vector<RawNode>& nodes() { return nodes_; }

private:
    const std::string& text_;
    size_t pos_ = 0;
    std::vector<RawNode> nodes_;

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("newick: " + msg, static_cast<long>(pos_));
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    void skip_space() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else if (c == '[') {  // bracket comment
                size_t end = text_.find(']', pos_);
                if (end == std::string::npos) fail("unterminated '[' comment");
                pos_ = end + 1;
            } else {
                break;
            }
        }
    }

    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    std::string parse_name() {
        skip_space();
        if (peek() == '\'') {
            ++pos_;
            std::string out;
            while (true) {
                if (pos_ >= text_.size()) fail("unterminated quoted label");
                char c = text_[pos_++];
                if (c == '\'') {
                    if (peek() == '\'') {  // doubled quote escapes a quote
                        out += '\'';
                        ++pos_;
                    } else {
                        break;
                    }
                } else {
                    out += c;
                }
            }
            return out;
        }
        std::string out;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '(' || c == ')' || c == ',' || c == ';' || c == ':' || c == '[' ||
                std::isspace(static_cast<unsigned char>(c)))
                break;
            out += (c == '_') ? ' ' : c;
            ++pos_;
        }
        return out;
    }

    void parse_branch_length() {
        skip_space();
        if (peek() != ':') return;
        ++pos_;
        skip_space();
        size_t start = pos_;
        if (peek() == '+' || peek() == '-') ++pos_;
        bool digits = false;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            ++pos_;
            digits = true;
        }
        if (peek() == '.') {
            ++pos_;
            while (std::isdigit(static_cast<unsigned char>(peek()))) {
                ++pos_;
                digits = true;
            }
        }
        if (peek() == 'e' || peek() == 'E') {
            ++pos_;
            if (peek() == '+' || peek() == '-') ++pos_;
            bool exp_digits = false;
            while (std::isdigit(static_cast<unsigned char>(peek()))) {
                ++pos_;
                exp_digits = true;
            }
            if (!exp_digits) digits = false;
        }
        if (!digits) {
            pos_ = start;
            fail("malformed branch length");
        }
        // Value discarded: topology only.
    }

    int parse_node() {
        skip_space();
        int id = static_cast<int>(nodes_.size());
        nodes_.emplace_back();
        if (peek() == '(') {
            ++pos_;
            while (true) {
                int child = parse_node();
                nodes_[id].children.push_back(child);
                skip_space();
                if (peek() == ',') {
                    ++pos_;
                    continue;
                }
                expect(')');
                break;
            }
            nodes_[id].name = parse_name();  // internal name, discarded later
            parse_branch_length();
        } else {
            nodes_[id].name = parse_name();
            if (nodes_[id].name.empty()) fail("empty leaf label");
            parse_branch_length();
        }
        return id;
    }
};

}  // namespace

PhyloTree parse_tree(const std::string& text) {
    Parser parser(text);
    int root = parser.parse_root();
    auto& raw = parser.nodes();

    // Undirected view of the rooted parse.
    int n = static_cast<int>(raw.size());
    std::vector<std::set<int>> adj(n);
    for (int v = 0; v < n; ++v) {
        for (int c : raw[v].children) {
            adj[v].insert(c);
            adj[c].insert(v);
        }
    }

    std::vector<char> labeled(n, 0);
    for (int v = 0; v < n; ++v) labeled[v] = raw[v].children.empty();
    if (n > 1 && adj[root].size() == 1) {
        // A degree-1 root is itself a leaf; it must carry a label.
        if (raw[root].name.empty())
            throw ParseError("newick: root of degree 1 must be a labeled leaf");
        labeled[root] = 1;
    }
    auto is_labeled = [&](int v) { return static_cast<bool>(labeled[v]); };

    // Suppress unlabeled degree-2 vertices (including a bifurcating root).
    std::vector<char> alive(n, 1);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int v = 0; v < n; ++v) {
            if (!alive[v] || is_labeled(v) || adj[v].size() != 2) continue;
            auto it = adj[v].begin();
            int a = *it++;
            int b = *it;
            adj[a].erase(v);
            adj[b].erase(v);
            adj[a].insert(b);
            adj[b].insert(a);
            adj[v].clear();
            alive[v] = 0;
            changed = true;
        }
    }

    std::vector<int> new_id(n, -1);
    int count = 0;
    for (int v = 0; v < n; ++v) {
        if (alive[v]) new_id[v] = count++;
    }
    std::vector<Edge> edges;
    std::map<int, std::string> labels;
    for (int v = 0; v < n; ++v) {
        if (!alive[v]) continue;
        if (is_labeled(v)) labels[new_id[v]] = raw[v].name;
        for (int w : adj[v]) {
            if (v < w) edges.push_back(make_edge(new_id[v], new_id[w]));
        }
    }
    return PhyloTree::from_edges(count, edges, labels);
}

namespace {

bool needs_quoting(const std::string& name) {
    if (name.empty()) return true;
    for (char c : name) {
        bool plain = std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-' ||
                     c == '+' || c == '|' || c == '/' || c == ' ';
        if (!plain) return true;
    }
    return false;
}

std::string render_label(const std::string& name) {
    if (needs_quoting(name)) {
        std::string out = "'";
        for (char c : name) {
            out += c;
            if (c == '\'') out += '\'';
        }
        return out + "'";
    }
    std::string out = name;
    std::replace(out.begin(), out.end(), ' ', '_');
    return out;
}

// Smallest label in the subtree away from `parent`; used to order children.
std::string min_label(const PhyloTree& t, int v, int parent) {
    if (t.is_leaf(v)) return t.label(v);
    std::string best;
    for (int w : t.neighbors(v)) {
        if (w == parent) continue;
        std::string m = min_label(t, w, v);
        if (best.empty() || m < best) best = m;
    }
    return best;
}

std::string render_subtree(const PhyloTree& t, int v, int parent) {
    if (t.is_leaf(v)) return render_label(t.label(v));
    std::vector<std::pair<std::string, int>> kids;
    for (int w : t.neighbors(v)) {
        if (w != parent) kids.emplace_back(min_label(t, w, v), w);
    }
    std::sort(kids.begin(), kids.end());
    std::string out = "(";
    for (size_t i = 0; i < kids.size(); ++i) {
        if (i) out += ',';
        out += render_subtree(t, kids[i].second, v);
    }
    return out + ")";
}

}  // namespace

std::string write_tree(const PhyloTree& t) {
    if (t.num_vertices() == 1) return render_label(t.label(0)) + ";";
    if (t.num_vertices() == 2) {
        auto names = t.labels();
        return "(" + render_label(names[0]) + "," + render_label(names[1]) + ");";
    }
    // Root at the internal vertex next to the smallest leaf.
    int leaf = 0;
    for (int v = 0; v < t.num_vertices(); ++v) {
        if (t.is_leaf(v) && (!t.is_leaf(leaf) || t.label(v) < t.label(leaf))) leaf = v;
    }
    int root = t.neighbors(leaf)[0];
    return render_subtree(t, root, -1) + ";";
}

Profile parse_profile(const std::string& text) {
    Profile p;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    std::ostringstream errors;
    bool failed = false;
    while (std::getline(in, line)) {
        ++line_no;
        size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        try {
            p.trees.push_back(parse_tree(line));
        } catch (const std::exception& e) {
            if (failed) errors << "; ";
            errors << "line " << line_no << ": " << e.what();
            failed = true;
        }
    }
    if (failed) throw ParseError("profile: " + errors.str());
    if (p.trees.empty()) throw ParseError("profile: no trees found");
    return p;
}

std::string write_profile(const Profile& p) {
    std::string out;
    for (const auto& t : p.trees) {
        out += write_tree(t);
        out += '\n';
    }
    return out;
}

}  // namespace treecompat
