#include "hclust/newick.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "hclust/errors.hpp"
#include "hclust/objectives.hpp"

namespace hclust {

namespace {

std::string fmt_len(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void emit(const Hierarchy& t, int v, const HeightFunction* h, std::string& out) {
    if (t.is_leaf(v)) {
        out += t.label(v);
    } else {
        out += '(';
        emit(t, t.left_child(v), h, out);
        out += ',';
        emit(t, t.right_child(v), h, out);
        out += ')';
    }
    const int p = t.n_leaves() > 1 ? t.parent(v) : -1;
    if (h != nullptr && p != -1) {
        const double hp = h->by_node[p];
        const double hv = t.is_leaf(v) ? 0.0 : h->by_node[v];
        out += ':';
        out += fmt_len(hp - hv);
    }
}

} // namespace

std::string to_newick(const Hierarchy& t) {
    std::string out;
    emit(t, t.root(), nullptr, out);
    out += ';';
    return out;
}

std::string to_newick(const Hierarchy& t, const HeightFunction& h,
                      std::optional<double> m) {
    // validates height ordering (and M) as a side effect
    if (m)
        (void)total_length(t, h, *m);
    else
        (void)total_length(t, h, (t.is_leaf(t.root()) ? 0.0 : h.by_node[t.root()]) + 1.0);

    std::string out;
    emit(t, t.root(), &h, out);
    if (m) {
        out += ':';
        out += fmt_len(*m - (t.is_leaf(t.root()) ? 0.0 : h.by_node[t.root()]));
    }
    out += ';';
    return out;
}

namespace {

void write_text(const std::string& text, const std::filesystem::path& path) {
    std::ofstream os(path);
    if (!os)
        throw IoError("cannot open '" + path.string() + "' for writing");
    os << text << '\n';
}

} // namespace

void write_newick(const Hierarchy& t, const std::filesystem::path& path) {
    write_text(to_newick(t), path);
}

void write_newick(const Hierarchy& t, const HeightFunction& h,
                  std::optional<double> m, const std::filesystem::path& path) {
    write_text(to_newick(t, h, m), path);
}

namespace {

struct NewickParser {
    const std::string& text;
    std::size_t pos = 0;

    struct TempNode {
        int left = -1, right = -1; // indices into nodes; -1 for leaves
        std::string label;
    };
    std::vector<TempNode> nodes;

    explicit NewickParser(const std::string& s) : text(s) {}

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("newick: " + what + " at position " + std::to_string(pos));
    }

    char peek() const { return pos < text.size() ? text[pos] : '\0'; }

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
    }

    void skip_length() {
        if (peek() != ':')
            return;
        ++pos;
        const std::size_t start = pos;
        while (pos < text.size() &&
               (std::isdigit(static_cast<unsigned char>(text[pos])) ||
                text[pos] == '.' || text[pos] == '-' || text[pos] == '+' ||
                text[pos] == 'e' || text[pos] == 'E'))
            ++pos;
        if (pos == start)
            fail("expected branch length after ':'");
    }

    std::string read_name() {
        const std::size_t start = pos;
        while (pos < text.size() && text[pos] != ',' && text[pos] != ')' &&
               text[pos] != '(' && text[pos] != ':' && text[pos] != ';' &&
               !std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
        return text.substr(start, pos - start);
    }

    int subtree() {
        skip_ws();
        if (peek() == '(') {
            ++pos;
            const int left = subtree();
            skip_ws();
            if (peek() != ',')
                fail("expected ',' (only binary trees are accepted)");
            ++pos;
            const int right = subtree();
            skip_ws();
            if (peek() != ')')
                fail("expected ')'");
            ++pos;
            read_name(); // internal labels are ignored
            skip_length();
            nodes.push_back({left, right, ""});
            return static_cast<int>(nodes.size()) - 1;
        }
        const std::string name = read_name();
        if (name.empty())
            fail("expected leaf name");
        skip_length();
        nodes.push_back({-1, -1, name});
        return static_cast<int>(nodes.size()) - 1;
    }

    Hierarchy parse() {
        const int root = subtree();
        skip_ws();
        if (peek() != ';')
            fail("expected ';'");
        ++pos;
        skip_ws();
        if (pos != text.size())
            fail("trailing characters");

        // leaves in appearance order become label order
        std::vector<std::string> labels;
        std::vector<int> new_id(nodes.size(), -1);
        for (std::size_t i = 0; i < nodes.size(); ++i)
            if (nodes[i].left == -1) {
                new_id[i] = static_cast<int>(labels.size());
                labels.push_back(nodes[i].label);
            }
        const int n = static_cast<int>(labels.size());
        std::vector<std::array<int, 2>> children;
        children.reserve(n - 1);
        for (std::size_t i = 0; i < nodes.size(); ++i)
            if (nodes[i].left != -1)
                new_id[i] = n + static_cast<int>(children.size()), children.push_back({});
        for (std::size_t i = 0; i < nodes.size(); ++i)
            if (nodes[i].left != -1)
                children[new_id[i] - n] = {new_id[nodes[i].left], new_id[nodes[i].right]};
        (void)root;
        return Hierarchy(std::move(labels), std::move(children));
    }
};

} // namespace

Hierarchy parse_newick(const std::string& text) {
    NewickParser p(text);
    return p.parse();
}

Hierarchy read_newick(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is)
        throw IoError("cannot open '" + path.string() + "'");
    std::stringstream ss;
    ss << is.rdbuf();
    std::string text = ss.str();
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
        text.pop_back();
    return parse_newick(text);
}

} // namespace hclust
