#include "agc/ltl/parser.hpp"

#include <algorithm>
#include <cctype>

namespace agc::ltl {

namespace {

enum class Tok {
  Ident,
  Pattern,
  True,
  False,
  Not,
  Next,
  Eventually,
  Globally,
  Until,
  Release,
  And,
  Or,
  Implies,
  Iff,
  LParen,
  RParen,
  Comma,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  SourcePos pos;
};

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

class Lexer {
public:
  Lexer(std::string_view text, SourcePos origin) : text_(text), pos_(origin) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      if (i_ >= text_.size()) {
        out.push_back({Tok::End, "end of input", pos_});
        return out;
      }
      const SourcePos start = pos_;
      const char c = text_[i_];
      if (std::islower(static_cast<unsigned char>(c))) {
        std::string word = take_word();
        Tok kind = word == "true"    ? Tok::True
                   : word == "false" ? Tok::False
                                     : Tok::Ident;
        out.push_back({kind, std::move(word), start});
        continue;
      }
      if (std::isupper(static_cast<unsigned char>(c))) {
        std::string word = take_word();
        lex_upper(word, start, out);
        continue;
      }
      switch (c) {
      case '!':
        advance(1);
        out.push_back({Tok::Not, "!", start});
        continue;
      case '&':
        advance(text_.substr(i_, 2) == "&&" ? 2 : 1);
        out.push_back({Tok::And, "&", start});
        continue;
      case '|':
        advance(text_.substr(i_, 2) == "||" ? 2 : 1);
        out.push_back({Tok::Or, "|", start});
        continue;
      case '(':
        advance(1);
        out.push_back({Tok::LParen, "(", start});
        continue;
      case ')':
        advance(1);
        out.push_back({Tok::RParen, ")", start});
        continue;
      case ',':
        advance(1);
        out.push_back({Tok::Comma, ",", start});
        continue;
      case '-':
        if (text_.substr(i_, 2) == "->") {
          advance(2);
          out.push_back({Tok::Implies, "->", start});
          continue;
        }
        break;
      case '<':
        if (text_.substr(i_, 3) == "<->") {
          advance(3);
          out.push_back({Tok::Iff, "<->", start});
          continue;
        }
        break;
      default:
        break;
      }
      throw ParseError(std::string("unexpected character '") + c + "'", start);
    }
  }

private:
  void lex_upper(const std::string &word, SourcePos start,
                 std::vector<Token> &out) {
    if (word == "U") {
      out.push_back({Tok::Until, word, start});
      return;
    }
    if (word == "R") {
      out.push_back({Tok::Release, word, start});
      return;
    }
    const bool unary_run = std::all_of(word.begin(), word.end(), [](char ch) {
      return ch == 'X' || ch == 'F' || ch == 'G';
    });
    if (unary_run) {
      SourcePos p = start;
      for (char ch : word) {
        Tok kind = ch == 'X' ? Tok::Next
                   : ch == 'F' ? Tok::Eventually
                               : Tok::Globally;
        out.push_back({kind, std::string(1, ch), p});
        ++p.column;
      }
      return;
    }
    out.push_back({Tok::Pattern, word, start});
  }

  std::string take_word() {
    std::size_t j = i_;
    while (j < text_.size() && ident_char(text_[j])) {
      ++j;
    }
    std::string word(text_.substr(i_, j - i_));
    advance(j - i_);
    return word;
  }

  void skip_space() {
    while (i_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[i_]))) {
      advance(1);
    }
  }

  void advance(std::size_t n) {
    for (std::size_t k = 0; k < n && i_ < text_.size(); ++k, ++i_) {
      if (text_[i_] == '\n') {
        ++pos_.line;
        pos_.column = 1;
      } else {
        ++pos_.column;
      }
    }
  }

  std::string_view text_;
  std::size_t i_ = 0;
  SourcePos pos_;
};

bool is_reserved_operator(Tok t) {
  return t == Tok::Next || t == Tok::Eventually || t == Tok::Globally ||
         t == Tok::Until || t == Tok::Release;
}

class Parser {
public:
  Parser(std::vector<Token> tokens, const ParseOptions &options)
      : toks_(std::move(tokens)), opts_(options) {}

  ParseResult run() {
    Formula f = parse_iff();
    if (peek().kind != Tok::End) {
      fail("unexpected '" + peek().text + "'");
    }
    return {std::move(f), std::move(fresh_)};
  }

private:
  Formula parse_iff() {
    Formula lhs = parse_impl();
    while (accept(Tok::Iff)) {
      lhs = iff(std::move(lhs), parse_impl());
    }
    return lhs;
  }

  Formula parse_impl() {
    Formula lhs = parse_or();
    if (accept(Tok::Implies)) {
      return implies(std::move(lhs), parse_impl());
    }
    return lhs;
  }

  Formula parse_or() {
    Formula lhs = parse_and();
    while (accept(Tok::Or)) {
      lhs = disj(std::move(lhs), parse_and());
    }
    return lhs;
  }

  Formula parse_and() {
    Formula lhs = parse_until();
    while (accept(Tok::And)) {
      lhs = conj(std::move(lhs), parse_until());
    }
    return lhs;
  }

  Formula parse_until() {
    Formula lhs = parse_unary();
    if (accept(Tok::Until)) {
      return until(std::move(lhs), parse_until());
    }
    if (accept(Tok::Release)) {
      return release(std::move(lhs), parse_until());
    }
    return lhs;
  }

  Formula parse_unary() {
    const Token &t = peek();
    switch (t.kind) {
    case Tok::Not:
      ++at_;
      return neg(parse_unary());
    case Tok::Next:
    case Tok::Eventually:
    case Tok::Globally: {
      const Token op = t;
      ++at_;
      if (!starts_operand(peek().kind)) {
        fail_at("reserved word '" + op.text + "' used as atom", op.pos);
      }
      Formula body = parse_unary();
      return op.kind == Tok::Next         ? next(std::move(body))
             : op.kind == Tok::Eventually ? eventually(std::move(body))
                                          : globally(std::move(body));
    }
    case Tok::True:
      ++at_;
      return top();
    case Tok::False:
      ++at_;
      return bottom();
    case Tok::Ident: {
      std::string name = t.text;
      ++at_;
      note_atom(name);
      return atom(std::move(name));
    }
    case Tok::Pattern:
      return parse_pattern();
    case Tok::LParen: {
      ++at_;
      Formula inner = parse_iff();
      expect(Tok::RParen, "')'");
      return inner;
    }
    default:
      break;
    }
    if (is_reserved_operator(t.kind)) {
      fail("reserved word '" + t.text + "' used as atom");
    }
    fail("expected a formula, found '" + t.text + "'");
  }

  Formula parse_pattern() {
    const Token name = peek();
    ++at_;
    if (peek().kind != Tok::LParen) {
      fail_at("unknown operator '" + name.text +
                  "' (pattern calls need an argument list)",
              name.pos);
    }
    if (!opts_.patterns) {
      fail_at("pattern call '" + name.text + "' is not allowed here",
              name.pos);
    }
    ++at_;
    std::vector<std::string> args;
    if (peek().kind != Tok::RParen) {
      do {
        const Token &arg = peek();
        // Capitalized words are allowed too; the hook may map type names.
        if (arg.kind != Tok::Ident && arg.kind != Tok::Pattern) {
          fail("pattern arguments must be names, found '" + arg.text + "'");
        }
        args.push_back(arg.text);
        if (arg.kind == Tok::Ident) note_atom(arg.text);
        ++at_;
      } while (accept(Tok::Comma));
    }
    expect(Tok::RParen, "')'");
    try {
      return opts_.patterns(name.text, args, name.pos);
    } catch (const ParseError &) {
      throw;
    } catch (const Error &e) {
      throw ParseError(e.what(), name.pos);
    }
  }

  static bool starts_operand(Tok t) {
    switch (t) {
    case Tok::Not:
    case Tok::Next:
    case Tok::Eventually:
    case Tok::Globally:
    case Tok::True:
    case Tok::False:
    case Tok::Ident:
    case Tok::Pattern:
    case Tok::LParen:
      return true;
    default:
      return false;
    }
  }

  void note_atom(const std::string &name) {
    if (!opts_.known_aps || opts_.known_aps->contains(name)) {
      return;
    }
    if (std::find(fresh_.begin(), fresh_.end(), name) == fresh_.end()) {
      fresh_.push_back(name);
    }
  }

  const Token &peek() const { return toks_[at_]; }

  bool accept(Tok kind) {
    if (peek().kind == kind) {
      ++at_;
      return true;
    }
    return false;
  }

  void expect(Tok kind, const std::string &what) {
    if (!accept(kind)) {
      fail("expected " + what + ", found '" + peek().text + "'");
    }
  }

  [[noreturn]] void fail(const std::string &message) const {
    fail_at(message, peek().pos);
  }

  [[noreturn]] static void fail_at(const std::string &message, SourcePos pos) {
    throw ParseError(message, pos);
  }

  std::vector<Token> toks_;
  std::size_t at_ = 0;
  const ParseOptions &opts_;
  std::vector<std::string> fresh_;
};

} // namespace

ParseResult parse_formula(std::string_view text, const ParseOptions &options) {
  Lexer lexer(text, options.origin);
  Parser parser(lexer.run(), options);
  return parser.run();
}

Formula parse(std::string_view text) {
  return parse_formula(text, ParseOptions{}).formula;
}

bool is_identifier(std::string_view s) noexcept {
  if (s.empty() || !std::islower(static_cast<unsigned char>(s.front()))) {
    return false;
  }
  if (s == "true" || s == "false") {
    return false;
  }
  return std::all_of(s.begin(), s.end(), ident_char);
}

} // namespace agc::ltl
