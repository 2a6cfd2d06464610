#include "entity_guard/pattern.hpp"

#include <limits>

#include "entity_guard/errors.hpp"
#include "entity_guard/unicode.hpp"

namespace entity_guard::rx {

namespace detail {

namespace {

constexpr std::uint8_t kPropLetter = 1u << 0;
constexpr std::uint8_t kPropNumber = 1u << 1;
constexpr std::uint8_t kPropPunct = 1u << 2;
constexpr std::uint8_t kPropDigit = 1u << 3;

struct CpRange {
    char32_t lo;
    char32_t hi;
};

struct CharClass {
    bool negated = false;
    std::uint8_t props = 0;
    std::vector<CpRange> ranges;

    bool contains(char32_t cp) const {
        bool hit = false;
        for (const auto& r : ranges) {
            if (cp >= r.lo && cp <= r.hi) {
                hit = true;
                break;
            }
        }
        if (!hit && props) {
            if ((props & kPropLetter) && uni::is_letter(cp)) hit = true;
            else if ((props & kPropNumber) && uni::is_number(cp)) hit = true;
            else if ((props & kPropPunct) && uni::is_punctuation(cp)) hit = true;
            else if ((props & kPropDigit) && uni::is_decimal_digit(cp)) hit = true;
        }
        return negated ? !hit : hit;
    }
};

enum class Op : std::uint8_t { Lit, Class, Any, Split, Jmp, WordB, Bol, Eol, Look, Match };

struct Insn {
    Op op;
    char32_t cp = 0;     // Lit
    std::uint32_t a = 0; // Split first branch / Jmp target / Look entry
    std::uint32_t b = 0; // Split second branch
    std::uint32_t cls = 0;
};

}  // namespace

struct Program {
    std::vector<Insn> code;
    std::vector<CharClass> classes;
    std::uint32_t entry = 0;
    bool uses_lookahead = false;
    bool uses_props = false;
    bool uses_anchors = false;
};

namespace {

// ---- AST ----------------------------------------------------------------

struct Node;
using NodePtr = std::unique_ptr<Node>;

struct Node {
    enum class Kind { Lit, Class, Any, Seq, Alt, Repeat, Look, WordB, Bol, Eol } kind;
    char32_t cp = 0;
    CharClass cls;
    std::vector<NodePtr> children;
    int min = 0;
    int max = 0;  // -1 = unbounded
};

NodePtr make(Node::Kind k) {
    auto n = std::make_unique<Node>();
    n->kind = k;
    return n;
}

// ---- Parser -------------------------------------------------------------

class Parser {
  public:
    explicit Parser(std::u32string pattern) : pat_(std::move(pattern)) {}

    NodePtr parse() {
        auto node = parse_alt();
        if (pos_ != pat_.size()) fail("unbalanced ')'");
        return node;
    }

  private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw PatternError("pattern error at offset " + std::to_string(pos_) + ": " + msg);
    }

    bool eof() const { return pos_ >= pat_.size(); }
    char32_t peek() const { return pat_[pos_]; }
    char32_t next() { return pat_[pos_++]; }
    bool consume(char32_t c) {
        if (!eof() && peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodePtr parse_alt() {
        std::vector<NodePtr> branches;
        branches.push_back(parse_seq());
        while (consume(U'|')) branches.push_back(parse_seq());
        if (branches.size() == 1) return std::move(branches.front());
        auto alt = make(Node::Kind::Alt);
        alt->children = std::move(branches);
        return alt;
    }

    NodePtr parse_seq() {
        auto seq = make(Node::Kind::Seq);
        while (!eof() && peek() != U'|' && peek() != U')') {
            seq->children.push_back(parse_repeat());
        }
        return seq;
    }

    NodePtr parse_repeat() {
        auto atom = parse_atom();
        if (eof()) return atom;
        int min = -1, max = -1;
        const char32_t c = peek();
        if (c == U'?') {
            ++pos_;
            min = 0;
            max = 1;
        } else if (c == U'*') {
            ++pos_;
            min = 0;
            max = -1;
        } else if (c == U'+') {
            ++pos_;
            min = 1;
            max = -1;
        } else if (c == U'{') {
            std::size_t save = pos_;
            if (!parse_brace(min, max)) {
                pos_ = save;
                return atom;  // literal '{' handled by parse_atom on next call
            }
        } else {
            return atom;
        }
        if (!eof() && (peek() == U'?' || peek() == U'+')) fail("lazy/possessive quantifiers unsupported");
        if (!eof() && peek() == U'*') fail("multiple repeat");
        if (atom->kind == Node::Kind::WordB || atom->kind == Node::Kind::Bol ||
            atom->kind == Node::Kind::Eol || atom->kind == Node::Kind::Look) {
            fail("quantifier on zero-width assertion");
        }
        auto rep = make(Node::Kind::Repeat);
        rep->min = min;
        rep->max = max;
        rep->children.push_back(std::move(atom));
        return rep;
    }

    // {m} {m,} {m,n}; returns false when the braces are not a quantifier.
    bool parse_brace(int& min, int& max) {
        ++pos_;  // '{'
        std::size_t digits = 0;
        long m = 0;
        while (!eof() && peek() >= U'0' && peek() <= U'9') {
            m = m * 10 + static_cast<long>(next() - U'0');
            ++digits;
        }
        if (digits == 0) return false;
        if (consume(U'}')) {
            min = static_cast<int>(m);
            max = static_cast<int>(m);
            return true;
        }
        if (!consume(U',')) return false;
        if (consume(U'}')) {
            min = static_cast<int>(m);
            max = -1;
            return true;
        }
        long n = 0;
        digits = 0;
        while (!eof() && peek() >= U'0' && peek() <= U'9') {
            n = n * 10 + static_cast<long>(next() - U'0');
            ++digits;
        }
        if (digits == 0 || !consume(U'}')) return false;
        if (n < m) fail("bad repeat interval");
        min = static_cast<int>(m);
        max = static_cast<int>(n);
        return true;
    }

    NodePtr parse_atom() {
        if (eof()) fail("dangling quantifier or empty atom");
        const char32_t c = next();
        switch (c) {
            case U'(': {
                bool lookahead = false;
                if (consume(U'?')) {
                    if (consume(U':')) {
                        // non-capturing group
                    } else if (consume(U'=')) {
                        lookahead = true;
                    } else {
                        fail("only (?:...) and (?=...) groups are supported");
                    }
                }
                auto body = parse_alt();
                if (!consume(U')')) fail("missing ')'");
                if (lookahead) {
                    auto look = make(Node::Kind::Look);
                    look->children.push_back(std::move(body));
                    return look;
                }
                return body;  // captures are not tracked; groups only group
            }
            case U'[':
                return parse_class();
            case U'.':
                return make(Node::Kind::Any);
            case U'^':
                return make(Node::Kind::Bol);
            case U'$':
                return make(Node::Kind::Eol);
            case U'\\':
                return parse_escape(false);
            case U')':
                fail("unbalanced ')'");
            default: {
                auto lit = make(Node::Kind::Lit);
                lit->cp = c;
                return lit;
            }
        }
    }

    std::uint8_t parse_property() {
        if (!consume(U'{')) fail("expected '{' after \\p");
        std::u32string name;
        while (!eof() && peek() != U'}') name.push_back(next());
        if (!consume(U'}')) fail("missing '}' in \\p{...}");
        if (name == U"L") return kPropLetter;
        if (name == U"N") return kPropNumber;
        if (name == U"P") return kPropPunct;
        if (name == U"Nd") return kPropDigit;
        fail("unsupported property \\p{" + uni::encode_utf8(name) + "}");
    }

    NodePtr parse_escape(bool in_class) {
        if (eof()) fail("trailing backslash");
        const char32_t c = next();
        switch (c) {
            case U'd': {
                auto n = make(Node::Kind::Class);
                n->cls.props = kPropDigit;
                return n;
            }
            case U'p': {
                auto n = make(Node::Kind::Class);
                n->cls.props = parse_property();
                return n;
            }
            case U'b':
                if (in_class) {
                    auto lit = make(Node::Kind::Lit);
                    lit->cp = U'\b';
                    return lit;
                }
                return make(Node::Kind::WordB);
            case U'n': {
                auto lit = make(Node::Kind::Lit);
                lit->cp = U'\n';
                return lit;
            }
            case U't': {
                auto lit = make(Node::Kind::Lit);
                lit->cp = U'\t';
                return lit;
            }
            case U'r': {
                auto lit = make(Node::Kind::Lit);
                lit->cp = U'\r';
                return lit;
            }
            case U'w':
            case U's':
            case U'W':
            case U'S':
            case U'D':
                fail("unsupported escape class");
            default: {
                auto lit = make(Node::Kind::Lit);
                lit->cp = c;
                return lit;
            }
        }
    }

    NodePtr parse_class() {
        auto node = make(Node::Kind::Class);
        CharClass& cls = node->cls;
        cls.negated = consume(U'^');
        bool first = true;
        while (true) {
            if (eof()) fail("missing ']'");
            if (peek() == U']' && !first) {
                ++pos_;
                break;
            }
            first = false;
            char32_t lo;
            bool lo_is_char = true;
            if (peek() == U'\\') {
                ++pos_;
                auto sub = parse_escape(true);
                if (sub->kind == Node::Kind::Class) {
                    cls.props |= sub->cls.props;
                    lo_is_char = false;
                    lo = 0;
                } else {
                    lo = sub->cp;
                }
            } else {
                lo = next();
            }
            if (!lo_is_char) continue;
            // Range when '-' is followed by something other than ']'.
            if (!eof() && peek() == U'-' && pos_ + 1 < pat_.size() && pat_[pos_ + 1] != U']') {
                ++pos_;
                char32_t hi;
                if (peek() == U'\\') {
                    ++pos_;
                    auto sub = parse_escape(true);
                    if (sub->kind == Node::Kind::Class) fail("class escape cannot end a range");
                    hi = sub->cp;
                } else {
                    hi = next();
                }
                if (hi < lo) fail("reversed range in class");
                cls.ranges.push_back({lo, hi});
            } else {
                cls.ranges.push_back({lo, lo});
            }
        }
        return node;
    }

    std::u32string pat_;
    std::size_t pos_ = 0;
};

// ---- Compiler -----------------------------------------------------------

class Compiler {
  public:
    Program compile(const Node& root) {
        emit_node(root);
        emit(Op::Match);
        // Lookahead bodies are compiled after the main program so the
        // instruction stream stays linear.
        while (!pending_.empty()) {
            auto [node, insn_index] = pending_.back();
            pending_.pop_back();
            prog_.code[insn_index].a = static_cast<std::uint32_t>(prog_.code.size());
            emit_node(*node);
            emit(Op::Match);
        }
        return std::move(prog_);
    }

  private:
    std::uint32_t emit(Op op) {
        prog_.code.push_back(Insn{op});
        return static_cast<std::uint32_t>(prog_.code.size() - 1);
    }

    void emit_node(const Node& n) {
        switch (n.kind) {
            case Node::Kind::Lit: {
                auto i = emit(Op::Lit);
                prog_.code[i].cp = n.cp;
                break;
            }
            case Node::Kind::Any:
                emit(Op::Any);
                break;
            case Node::Kind::Class: {
                if (n.cls.props) prog_.uses_props = true;
                auto i = emit(Op::Class);
                prog_.classes.push_back(n.cls);
                prog_.code[i].cls = static_cast<std::uint32_t>(prog_.classes.size() - 1);
                break;
            }
            case Node::Kind::Seq:
                for (const auto& c : n.children) emit_node(*c);
                break;
            case Node::Kind::Alt: {
                // Chain of splits, branches in source order.
                std::vector<std::uint32_t> jumps;
                for (std::size_t k = 0; k < n.children.size(); ++k) {
                    if (k + 1 < n.children.size()) {
                        auto split = emit(Op::Split);
                        prog_.code[split].a = static_cast<std::uint32_t>(prog_.code.size());
                        emit_node(*n.children[k]);
                        jumps.push_back(emit(Op::Jmp));
                        prog_.code[split].b = static_cast<std::uint32_t>(prog_.code.size());
                    } else {
                        emit_node(*n.children[k]);
                    }
                }
                for (auto j : jumps) prog_.code[j].a = static_cast<std::uint32_t>(prog_.code.size());
                break;
            }
            case Node::Kind::Repeat:
                emit_repeat(n);
                break;
            case Node::Kind::Look: {
                prog_.uses_lookahead = true;
                auto i = emit(Op::Look);
                pending_.emplace_back(n.children.front().get(), i);
                break;
            }
            case Node::Kind::WordB:
                emit(Op::WordB);
                break;
            case Node::Kind::Bol:
                prog_.uses_anchors = true;
                emit(Op::Bol);
                break;
            case Node::Kind::Eol:
                prog_.uses_anchors = true;
                emit(Op::Eol);
                break;
        }
    }

    void emit_repeat(const Node& rep) {
        const Node& body = *rep.children.front();
        for (int k = 0; k < rep.min; ++k) emit_node(body);
        if (rep.max < 0) {
            // Greedy star: prefer another iteration over exit.
            auto loop = static_cast<std::uint32_t>(prog_.code.size());
            auto split = emit(Op::Split);
            prog_.code[split].a = static_cast<std::uint32_t>(prog_.code.size());
            emit_node(body);
            auto j = emit(Op::Jmp);
            prog_.code[j].a = loop;
            prog_.code[split].b = static_cast<std::uint32_t>(prog_.code.size());
        } else {
            // Bounded tail as nested optionals so backtracking trims from
            // the right: (b (b (b)?)?)?
            std::vector<std::uint32_t> splits;
            for (int k = rep.min; k < rep.max; ++k) {
                auto split = emit(Op::Split);
                prog_.code[split].a = static_cast<std::uint32_t>(prog_.code.size());
                splits.push_back(split);
                emit_node(body);
            }
            const auto end = static_cast<std::uint32_t>(prog_.code.size());
            for (auto s : splits) prog_.code[s].b = end;
        }
    }

    Program prog_;
    std::vector<std::pair<const Node*, std::uint32_t>> pending_;
};

// ---- Executor -----------------------------------------------------------

class Executor {
  public:
    Executor(const Program& prog, std::u32string_view text, bool require_end = false)
        : prog_(prog), text_(text), require_end_(require_end) {}

    bool run(std::uint32_t pc, std::size_t pos, std::size_t& match_end) const {
        while (true) {
            const Insn& insn = prog_.code[pc];
            switch (insn.op) {
                case Op::Lit:
                    if (pos >= text_.size() || text_[pos] != insn.cp) return false;
                    ++pos;
                    ++pc;
                    break;
                case Op::Any:
                    if (pos >= text_.size() || text_[pos] == U'\n') return false;
                    ++pos;
                    ++pc;
                    break;
                case Op::Class:
                    if (pos >= text_.size() || !prog_.classes[insn.cls].contains(text_[pos]))
                        return false;
                    ++pos;
                    ++pc;
                    break;
                case Op::Split:
                    if (run(insn.a, pos, match_end)) return true;
                    pc = insn.b;
                    break;
                case Op::Jmp:
                    pc = insn.a;
                    break;
                case Op::WordB: {
                    const bool before = pos > 0 && uni::is_word(text_[pos - 1]);
                    const bool after = pos < text_.size() && uni::is_word(text_[pos]);
                    if (before == after) return false;
                    ++pc;
                    break;
                }
                case Op::Bol:
                    if (pos != 0) return false;
                    ++pc;
                    break;
                case Op::Eol:
                    if (pos != text_.size()) return false;
                    ++pc;
                    break;
                case Op::Look: {
                    // Zero-width: the sub-program never has to reach text end.
                    Executor sub(prog_, text_, false);
                    std::size_t ignored = 0;
                    if (!sub.run(insn.a, pos, ignored)) return false;
                    ++pc;
                    break;
                }
                case Op::Match:
                    // In require-end mode an incomplete match fails so the
                    // splits above keep backtracking toward a full one.
                    if (require_end_ && pos != text_.size()) return false;
                    match_end = pos;
                    return true;
            }
        }
    }

  private:
    const Program& prog_;
    std::u32string_view text_;
    bool require_end_;
};

}  // namespace

}  // namespace detail

Pattern Pattern::compile(std::string_view pattern_utf8) {
    Pattern p;
    p.source_ = std::string(pattern_utf8);
    detail::Parser parser(uni::decode_utf8(pattern_utf8));
    auto ast = parser.parse();
    detail::Compiler compiler;
    p.program_ = std::make_shared<const detail::Program>(compiler.compile(*ast));
    return p;
}

std::optional<Span> Pattern::match_at(std::u32string_view text, std::size_t pos) const {
    detail::Executor exec(*program_, text);
    std::size_t end = 0;
    if (pos > text.size()) return std::nullopt;
    if (!exec.run(program_->entry, pos, end)) return std::nullopt;
    return Span{pos, end};
}

std::optional<Span> Pattern::search(std::u32string_view text, std::size_t pos) const {
    detail::Executor exec(*program_, text);
    for (std::size_t start = pos; start <= text.size(); ++start) {
        std::size_t end = 0;
        if (exec.run(program_->entry, start, end)) return Span{start, end};
    }
    return std::nullopt;
}

bool Pattern::full_match(std::u32string_view text) const {
    detail::Executor exec(*program_, text, /*require_end=*/true);
    std::size_t end = 0;
    return exec.run(program_->entry, 0, end);
}

std::vector<Span> Pattern::find_all(std::u32string_view text) const {
    std::vector<Span> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto m = search(text, pos);
        if (!m) break;
        out.push_back(*m);
        pos = m->end > m->begin ? m->end : m->begin + 1;
    }
    return out;
}

bool Pattern::uses_lookahead() const { return program_->uses_lookahead; }
bool Pattern::uses_property_classes() const { return program_->uses_props; }
bool Pattern::uses_anchors() const { return program_->uses_anchors; }

}  // namespace entity_guard::rx
