#include <string>
#include <vector>

#include "dcov/design.hpp"
#include "dcov/error.hpp"
#include "dcov/token.hpp"

namespace dcov {

namespace {

enum class Tok { Word, Punct, End };

struct Lexeme {
  Tok kind = Tok::End;
  std::string text;
  bool quoted = false;
  std::size_t line = 0;
};

std::vector<Lexeme> lex(std::string_view text) {
  std::vector<Lexeme> out;
  std::size_t line = 1;
  std::size_t pos = 0;
  std::string error;
  while (pos < text.size()) {
    char c = text[pos];
    if (c == '\n') {
      ++line;
      ++pos;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++pos;
      continue;
    }
    if (c == '#') {
      while (pos < text.size() && text[pos] != '\n') {
        ++pos;
      }
      continue;
    }
    if (c == '-' && pos + 1 < text.size() && text[pos + 1] == '>') {
      out.push_back({Tok::Punct, "->", false, line});
      pos += 2;
      continue;
    }
    if (c == '(' || c == ')' || c == '{' || c == '}' || c == ',' || c == ';' || c == ':') {
      out.push_back({Tok::Punct, std::string(1, c), false, line});
      ++pos;
      continue;
    }
    auto tok = token::scan(text, pos, error);
    if (!tok) {
      throw ParseError(line, error);
    }
    out.push_back({Tok::Word, std::move(tok->value), tok->quoted, line});
  }
  out.push_back({Tok::End, "", false, line});
  return out;
}

class Parser {
public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  DesignModel parse_model() {
    DesignModel model;
    while (peek().kind != Tok::End) {
      const Lexeme& kw = peek();
      if (is_keyword(kw, "statechart")) {
        model.statecharts.push_back(parse_statechart());
      } else if (is_keyword(kw, "activity")) {
        model.activities.push_back(parse_activity());
      } else if (is_keyword(kw, "msc")) {
        model.mscs.push_back(parse_msc());
      } else if (is_keyword(kw, "classdiagram")) {
        model.classdiagrams.push_back(parse_classdiagram());
      } else {
        fail(kw, "expected 'statechart', 'activity', 'msc' or 'classdiagram'");
      }
    }
    return model;
  }

private:
  const Lexeme& peek() const { return toks_[pos_]; }

  const Lexeme& advance() {
    const Lexeme& t = toks_[pos_];
    if (t.kind != Tok::End) {
      ++pos_;
    }
    return t;
  }

  static bool is_keyword(const Lexeme& t, std::string_view kw) {
    return t.kind == Tok::Word && !t.quoted && t.text == kw;
  }

  static std::string describe(const Lexeme& t) {
    switch (t.kind) {
    case Tok::End:
      return "end of input";
    case Tok::Punct:
      return "'" + t.text + "'";
    case Tok::Word:
      break;
    }
    return "'" + t.text + "'";
  }

  [[noreturn]] static void fail(const Lexeme& at, const std::string& what) {
    throw ParseError(at.line, what + ", found " + describe(at));
  }

  void expect(std::string_view punct) {
    const Lexeme& t = peek();
    if (t.kind != Tok::Punct || t.text != punct) {
      fail(t, "expected '" + std::string(punct) + "'");
    }
    advance();
  }

  bool accept(std::string_view punct) {
    const Lexeme& t = peek();
    if (t.kind == Tok::Punct && t.text == punct) {
      advance();
      return true;
    }
    return false;
  }

  std::string word(std::string_view what) {
    const Lexeme& t = peek();
    if (t.kind != Tok::Word) {
      fail(t, "expected " + std::string(what));
    }
    return advance().text;
  }

  std::size_t keyword(std::string_view kw) {
    const Lexeme& t = peek();
    if (!is_keyword(t, kw)) {
      fail(t, "expected '" + std::string(kw) + "'");
    }
    return advance().line;
  }

  Statechart parse_statechart() {
    Statechart sc;
    sc.line = keyword("statechart");
    sc.name = word("statechart name");
    expect("{");
    bool have_initial = false;
    while (!accept("}")) {
      const Lexeme& t = peek();
      if (is_keyword(t, "initial")) {
        std::size_t line = advance().line;
        if (have_initial) {
          throw ParseError(line, sc.name + ": duplicate initial declaration");
        }
        sc.initial = word("initial state");
        expect(";");
        have_initial = true;
      } else if (is_keyword(t, "transition")) {
        Transition tr;
        tr.line = advance().line;
        expect("(");
        tr.from = word("source state");
        expect(",");
        tr.to = word("target state");
        expect(",");
        tr.event = word("event name");
        expect(")");
        expect(";");
        sc.transitions.push_back(std::move(tr));
      } else {
        fail(t, "expected 'initial', 'transition' or '}'");
      }
    }
    if (!have_initial) {
      throw ParseError(sc.line, sc.name + ": missing initial declaration");
    }
    return sc;
  }

  BranchTransition parse_branch_transition() {
    BranchTransition bt;
    bt.line = peek().line;
    bt.id = word("transition id");
    expect(":");
    bt.next = word("next branch");
    return bt;
  }

  ActivityDiagram parse_activity() {
    ActivityDiagram ad;
    ad.line = keyword("activity");
    ad.name = word("activity name");
    expect("{");
    bool have_entry = false;
    while (!accept("}")) {
      const Lexeme& t = peek();
      if (is_keyword(t, "entry")) {
        std::size_t line = advance().line;
        if (have_entry) {
          throw ParseError(line, ad.name + ": duplicate entry declaration");
        }
        expect("(");
        ad.entry = parse_branch_transition();
        expect(")");
        expect(";");
        have_entry = true;
      } else if (is_keyword(t, "decision")) {
        Decision d;
        d.line = advance().line;
        expect("(");
        d.branch = word("branch id");
        expect(",");
        do {
          d.outgoing.push_back(parse_branch_transition());
        } while (accept(","));
        expect(")");
        expect(";");
        ad.decisions.push_back(std::move(d));
      } else {
        fail(t, "expected 'entry', 'decision' or '}'");
      }
    }
    if (!have_entry) {
      throw ParseError(ad.line, ad.name + ": missing entry declaration");
    }
    return ad;
  }

  MscChart parse_msc() {
    MscChart msc;
    msc.line = keyword("msc");
    msc.name = word("msc name");
    expect("{");
    while (!accept("}")) {
      const Lexeme& t = peek();
      if (is_keyword(t, "sends")) {
        SendTuple s;
        s.line = advance().line;
        expect("(");
        s.sender = word("sender actor");
        expect(",");
        s.receiver = word("receiver actor");
        expect(",");
        s.message = word("message");
        expect(",");
        s.id = word("event id");
        expect(")");
        expect(";");
        msc.sends.push_back(std::move(s));
      } else if (is_keyword(t, "follows")) {
        Follows f;
        f.line = advance().line;
        expect("(");
        f.first = word("event id");
        expect(",");
        f.next = word("event id");
        expect(")");
        expect(";");
        msc.follows.push_back(std::move(f));
      } else {
        fail(t, "expected 'sends', 'follows' or '}'");
      }
    }
    return msc;
  }

  Pattern parse_pattern() {
    Pattern p;
    p.line = keyword("pattern");
    p.name = word("pattern name");
    expect("{");
    while (!accept("}")) {
      const Lexeme& t = peek();
      if (is_keyword(t, "node")) {
        PatternNode n;
        n.line = advance().line;
        n.id = word("node id");
        expect(":");
        n.cls = word("class name");
        expect(";");
        p.nodes.push_back(std::move(n));
      } else if (is_keyword(t, "edge")) {
        PatternEdge e;
        e.line = advance().line;
        expect("(");
        e.src = word("node id");
        expect(",");
        e.assoc = word("association name");
        expect(",");
        e.dst = word("node id");
        expect(")");
        expect(";");
        p.edges.push_back(std::move(e));
      } else {
        fail(t, "expected 'node', 'edge' or '}'");
      }
    }
    return p;
  }

  ClassDiagram parse_classdiagram() {
    ClassDiagram cd;
    cd.line = keyword("classdiagram");
    cd.name = word("class diagram name");
    expect("{");
    while (!accept("}")) {
      const Lexeme& t = peek();
      if (is_keyword(t, "class")) {
        advance();
        cd.classes.push_back(word("class name"));
        expect(";");
      } else if (is_keyword(t, "isa")) {
        Generalization g;
        g.line = advance().line;
        expect("(");
        g.sub = word("subclass");
        expect(",");
        g.super = word("superclass");
        expect(")");
        expect(";");
        cd.isa.push_back(std::move(g));
      } else if (is_keyword(t, "assoc")) {
        Association a;
        a.line = advance().line;
        a.name = word("association name");
        expect("(");
        a.src = word("source class");
        expect("->");
        a.dst = word("target class");
        expect(",");
        const Lexeme& m = peek();
        auto mult = m.kind == Tok::Word && !m.quoted ? parse_multiplicity(m.text) : std::nullopt;
        if (!mult) {
          fail(m, "expected multiplicity '0..1', '1', '0..*' or '1..*'");
        }
        advance();
        a.mult = *mult;
        expect(")");
        expect(";");
        cd.assocs.push_back(std::move(a));
      } else if (is_keyword(t, "pattern")) {
        cd.patterns.push_back(parse_pattern());
      } else {
        fail(t, "expected 'class', 'isa', 'assoc', 'pattern' or '}'");
      }
    }
    return cd;
  }

  std::vector<Lexeme> toks_;
  std::size_t pos_ = 0;
};

} // namespace

DesignModel parse_design_syntax(std::string_view text) { return Parser(text).parse_model(); }

} // namespace dcov
