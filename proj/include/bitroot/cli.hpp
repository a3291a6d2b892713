/* Command-line front end: parse polynomial expressions whose coefficients mix
 * rationals, square roots of rationals and pi into coefficient oracles, run
 * the isolation driver, and emit machine-readable result documents.  Also
 * hosts the bench and verify subcommand drivers.
 */
#ifndef BITROOT_CLI_HPP
#define BITROOT_CLI_HPP

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bitroot/isolator.hpp"
#include "bitroot/oracle.hpp"

namespace bitroot {

using Json = nlohmann::ordered_json;

struct parse_error : std::runtime_error {
    size_t position;
    parse_error(const std::string& msg, size_t pos) : std::runtime_error(msg), position(pos) {}
};

namespace detail {
// value outside the supported constant field (e.g. pi*pi); the parser turns
// this into a parse_error carrying a source position
struct unrepresentable_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
}  // namespace detail

/* A real constant of the form  c0 + sum_q c_q*sqrt(q) + c_pi*pi  with
 * rational c's and pairwise multiplicatively independent integer radicands
 * q > 1.  Over this representation "equal to zero" is decidable: sqrt(q1),
 * sqrt(q2) are linearly dependent over the rationals iff q1*q2 is a perfect
 * square (checked exactly on insertion), and pi is transcendental, so the
 * value vanishes iff every stored coefficient does. */
struct SymbolicReal {
    Rational rat;
    std::map<Integer, Rational> surds;  // radicand -> coefficient
    Rational pi_coeff;

    bool is_zero() const { return sgn(rat) == 0 && surds.empty() && sgn(pi_coeff) == 0; }
    bool is_rational() const { return surds.empty() && sgn(pi_coeff) == 0; }
};

namespace detail {

/* split off the square factors with a prime divisor below 1000: returns
 * (m, r) with input = m^2 * r */
inline std::pair<Integer, Integer> extract_small_squares(Integer rad) {
    Integer m = 1;
    for (long p = 2; p < 1000; ++p) {
        Integer sq = Integer(p) * p;
        if (sq > rad) break;
        while (mpz_divisible_p(rad.get_mpz_t(), sq.get_mpz_t())) {
            rad /= sq;
            m *= p;
        }
    }
    return {m, rad};
}

/* fold coeff * sqrt(rad) into v, merging with any stored radicand that is
 * multiplicatively dependent on rad */
inline void accumulate_sqrt(SymbolicReal& v, const Rational& coeff_in, const Integer& rad_in) {
    if (sgn(coeff_in) == 0 || rad_in == 0) return;
    auto [m, rad] = extract_small_squares(rad_in);
    Rational coeff = coeff_in * Rational(m);
    if (rad == 1) {
        v.rat += coeff;
        return;
    }
    if (mpz_perfect_square_p(rad.get_mpz_t())) {
        Integer s;
        mpz_sqrt(s.get_mpz_t(), rad.get_mpz_t());
        v.rat += coeff * Rational(s);
        return;
    }
    for (auto it = v.surds.begin(); it != v.surds.end(); ++it) {
        Integer prod = it->first * rad;
        if (!mpz_perfect_square_p(prod.get_mpz_t())) continue;
        Integer s;
        mpz_sqrt(s.get_mpz_t(), prod.get_mpz_t());
        // sqrt(rad) = (s / q) * sqrt(q) for the stored radicand q
        it->second += coeff * Rational(s) / Rational(it->first);
        if (sgn(it->second) == 0) v.surds.erase(it);
        return;
    }
    v.surds.emplace(rad, coeff);
}

}  // namespace detail

inline SymbolicReal sym_rational(Rational r) {
    SymbolicReal v;
    v.rat = std::move(r);
    return v;
}

inline SymbolicReal sym_pi() {
    SymbolicReal v;
    v.pi_coeff = 1;
    return v;
}

inline SymbolicReal sym_sqrt(const Rational& q) {
    if (sgn(q) < 0) throw detail::unrepresentable_error("sqrt of a negative rational");
    SymbolicReal v;
    if (sgn(q) == 0) return v;
    Integer num = q.get_num(), den = q.get_den();
    detail::accumulate_sqrt(v, Rational(1) / Rational(den), num * den);
    return v;
}

inline void sym_add_into(SymbolicReal& a, const SymbolicReal& b) {
    a.rat += b.rat;
    a.pi_coeff += b.pi_coeff;
    for (const auto& [r, c] : b.surds) detail::accumulate_sqrt(a, c, r);
}

inline SymbolicReal sym_neg(const SymbolicReal& a) {
    SymbolicReal v;
    v.rat = -a.rat;
    v.pi_coeff = -a.pi_coeff;
    for (const auto& [r, c] : a.surds) v.surds.emplace(r, -c);
    return v;
}

inline SymbolicReal sym_scale(const SymbolicReal& a, const Rational& s) {
    SymbolicReal v;
    if (sgn(s) == 0) return v;
    v.rat = a.rat * s;
    v.pi_coeff = a.pi_coeff * s;
    for (const auto& [r, c] : a.surds) v.surds.emplace(r, c * s);
    return v;
}

inline SymbolicReal sym_mul(const SymbolicReal& a, const SymbolicReal& b) {
    if (sgn(a.pi_coeff) != 0 && !b.is_rational())
        throw detail::unrepresentable_error("products involving pi and another irrational constant");
    if (sgn(b.pi_coeff) != 0 && !a.is_rational())
        throw detail::unrepresentable_error("products involving pi and another irrational constant");
    SymbolicReal v;
    v.rat = a.rat * b.rat;
    v.pi_coeff = a.pi_coeff * b.rat + b.pi_coeff * a.rat;
    for (const auto& [r, c] : a.surds) detail::accumulate_sqrt(v, c * b.rat, r);
    for (const auto& [r, c] : b.surds) detail::accumulate_sqrt(v, c * a.rat, r);
    for (const auto& [r1, c1] : a.surds)
        for (const auto& [r2, c2] : b.surds) detail::accumulate_sqrt(v, c1 * c2, r1 * r2);
    return v;
}

inline RealStream stream_of_symbolic(const SymbolicReal& v) {
    if (v.is_rational()) return stream_of_rational(v.rat);
    std::vector<std::pair<Rational, RealStream>> terms;
    if (sgn(v.rat) != 0) terms.emplace_back(v.rat, stream_of_rational(Rational(1)));
    for (const auto& [r, c] : v.surds) terms.emplace_back(c, stream_sqrt(Rational(r)));
    if (sgn(v.pi_coeff) != 0) terms.emplace_back(v.pi_coeff, stream_pi());
    return stream_lincomb(std::move(terms));
}

/* ---------- expression parsing ---------- */

struct PolySpec {
    std::vector<SymbolicReal> coeffs;  // index = power of x; statically nonzero lead
    long degree() const { return static_cast<long>(coeffs.size()) - 1; }
};

namespace detail {

struct Token {
    enum Kind { Num, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End } kind;
    size_t pos;
    std::string text;
};

inline std::vector<Token> tokenize(const std::string& s) {
    std::vector<Token> out;
    size_t i = 0;
    auto starts = [&](const char* utf8) {
        return s.compare(i, std::char_traits<char>::length(utf8), utf8) == 0;
    };
    while (i < s.size()) {
        unsigned char c = static_cast<unsigned char>(s[i]);
        if (std::isspace(c)) {
            ++i;
        } else if (std::isdigit(c)) {
            size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            out.push_back({Token::Num, i, s.substr(i, j - i)});
            i = j;
        } else if (std::isalpha(c)) {
            size_t j = i;
            while (j < s.size() && std::isalpha(static_cast<unsigned char>(s[j]))) ++j;
            out.push_back({Token::Ident, i, s.substr(i, j - i)});
            i = j;
        } else if (c == '+') {
            out.push_back({Token::Plus, i++, "+"});
        } else if (c == '-') {
            out.push_back({Token::Minus, i++, "-"});
        } else if (starts("−")) {  // typeset minus sign
            out.push_back({Token::Minus, i, "-"});
            i += 3;
        } else if (c == '*') {
            out.push_back({Token::Star, i++, "*"});
        } else if (starts("·") || starts("⋅")) {  // middle/centered dot
            out.push_back({Token::Star, i, "*"});
            i += starts("·") ? 2 : 3;
        } else if (c == '/') {
            out.push_back({Token::Slash, i++, "/"});
        } else if (c == '^') {
            out.push_back({Token::Caret, i++, "^"});
        } else if (c == '(') {
            out.push_back({Token::LParen, i++, "("});
        } else if (c == ')') {
            out.push_back({Token::RParen, i++, ")"});
        } else {
            throw parse_error("unexpected character '" + s.substr(i, 1) + "'", i);
        }
    }
    out.push_back({Token::End, s.size(), ""});
    return out;
}

/* recursive-descent parser producing a dense polynomial with symbolic
 * coefficients; x only enters through the atom x[^k], so every coefficient
 * stays inside the supported constant field */
class ExprParser {
  public:
    explicit ExprParser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    using SymPoly = std::vector<SymbolicReal>;

    SymPoly parse() {
        SymPoly p = expr();
        if (peek().kind != Token::End) throw parse_error("unexpected trailing input", peek().pos);
        return p;
    }

  private:
    std::vector<Token> toks_;
    size_t idx_ = 0;

    const Token& peek() const { return toks_[idx_]; }
    const Token& get() { return toks_[idx_++]; }

    static void add_into(SymPoly& a, const SymPoly& b) {
        if (b.size() > a.size()) a.resize(b.size());
        for (size_t k = 0; k < b.size(); ++k) sym_add_into(a[k], b[k]);
    }

    static SymPoly negate(const SymPoly& a) {
        SymPoly out;
        out.reserve(a.size());
        for (const auto& c : a) out.push_back(sym_neg(c));
        return out;
    }

    SymPoly multiply(const SymPoly& a, const SymPoly& b, size_t pos) {
        if (a.empty() || b.empty()) return {};
        if (a.size() + b.size() > 66) throw parse_error("degree larger than 64", pos);
        SymPoly out(a.size() + b.size() - 1);
        try {
            for (size_t i = 0; i < a.size(); ++i)
                for (size_t j = 0; j < b.size(); ++j)
                    sym_add_into(out[i + j], sym_mul(a[i], b[j]));
        } catch (const unrepresentable_error& e) {
            throw parse_error(e.what(), pos);
        }
        return out;
    }

    Integer integer_literal() {
        if (peek().kind != Token::Num) throw parse_error("expected an integer", peek().pos);
        return Integer(get().text);
    }

    Rational rational_literal() {
        bool neg = false;
        while (peek().kind == Token::Minus || peek().kind == Token::Plus)
            neg ^= (get().kind == Token::Minus);
        Integer num = integer_literal();
        Integer den = 1;
        if (peek().kind == Token::Slash) {
            size_t pos = get().pos;
            den = integer_literal();
            if (den == 0) throw parse_error("division by zero", pos);
        }
        Rational r{num, den};
        r.canonicalize();
        return neg ? Rational(-r) : r;
    }

    SymPoly expr() {
        bool lead_neg = false;
        while (peek().kind == Token::Plus || peek().kind == Token::Minus)
            lead_neg ^= (get().kind == Token::Minus);
        SymPoly acc = term();
        if (lead_neg) acc = negate(acc);
        while (peek().kind == Token::Plus || peek().kind == Token::Minus) {
            bool minus = get().kind == Token::Minus;
            SymPoly rhs = term();
            add_into(acc, minus ? negate(rhs) : rhs);
        }
        return acc;
    }

    SymPoly term() {
        SymPoly acc = power();
        for (;;) {
            if (peek().kind == Token::Star) {
                size_t pos = get().pos;
                acc = multiply(acc, power(), pos);
            } else if (peek().kind == Token::Slash) {
                // division is only defined by nonzero integer literals
                size_t pos = get().pos;
                Integer den = integer_literal();
                if (den == 0) throw parse_error("division by zero", pos);
                Rational inv{Integer(1), den};
                inv.canonicalize();
                for (auto& c : acc) c = sym_scale(c, inv);
            } else {
                return acc;
            }
        }
    }

    SymPoly power() {
        size_t pos = peek().pos;
        SymPoly base = atom();
        if (peek().kind != Token::Caret) return base;
        get();
        if (peek().kind != Token::Num) throw parse_error("expected an exponent", peek().pos);
        const Token& t = get();
        unsigned long k = 0;
        try {
            k = std::stoul(t.text);
        } catch (const std::exception&) {
            throw parse_error("exponent out of range", t.pos);
        }
        if (k > 64) throw parse_error("exponent larger than 64", t.pos);
        SymPoly out{sym_rational(Rational(1))};
        for (unsigned long j = 0; j < k; ++j) out = multiply(out, base, pos);
        return out;
    }

    SymPoly atom() {
        const Token& t = peek();
        switch (t.kind) {
            case Token::Num:
                return {sym_rational(Rational(integer_literal()))};
            case Token::LParen: {
                get();
                SymPoly inner = expr();
                if (peek().kind != Token::RParen) throw parse_error("expected ')'", peek().pos);
                get();
                return inner;
            }
            case Token::Ident: {
                get();
                if (t.text == "pi") return {sym_pi()};
                if (t.text == "x") {
                    SymPoly p(2);
                    p[1] = sym_rational(Rational(1));
                    return p;
                }
                if (t.text == "sqrt") {
                    if (peek().kind != Token::LParen) throw parse_error("expected '('", peek().pos);
                    get();
                    size_t apos = peek().pos;
                    Rational q = rational_literal();
                    if (peek().kind != Token::RParen) throw parse_error("expected ')'", peek().pos);
                    get();
                    try {
                        return {sym_sqrt(q)};
                    } catch (const unrepresentable_error& e) {
                        throw parse_error(e.what(), apos);
                    }
                }
                throw parse_error("unknown name '" + t.text + "'", t.pos);
            }
            case Token::Minus:
            case Token::Plus: {
                bool neg = get().kind == Token::Minus;
                SymPoly inner = power();
                return neg ? negate(inner) : inner;
            }
            default:
                throw parse_error("expected a number, 'pi', 'sqrt', 'x' or '('", t.pos);
        }
    }
};

}  // namespace detail

inline PolySpec parse_poly(const std::string& text) {
    detail::ExprParser parser(detail::tokenize(text));
    std::vector<SymbolicReal> coeffs = parser.parse();
    while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
    if (coeffs.size() < 3)
        throw parse_error("polynomial degree must be at least 2", text.size());
    return PolySpec{std::move(coeffs)};
}

/* Build a coefficient oracle from a parsed spec.  The engine needs the
 * leading coefficient to have absolute value at least one, so the whole
 * polynomial is scaled by a power of two derived from a certified lower
 * bound on |lead|; roots are unchanged. */
inline CoefficientOracle oracle_from_spec(const PolySpec& spec) {
    RealStream lead = stream_of_symbolic(spec.coeffs.back());
    Rational lower;
    for (long rho = 2;; rho *= 2) {
        Rational v = abs(lead.approx(rho).to_rational());
        Rational tol = pow2_rational(-rho);
        if (v > 2 * tol) {
            lower = v - tol;
            break;
        }
        if (rho > (1L << 20))
            throw invariant_error("leading coefficient refinement failed to separate from zero");
    }
    Rational scale(1);
    if (lower < 1) scale = pow2_rational(ceil_log2(Rational(1) / lower));
    std::vector<RealStream> streams;
    streams.reserve(spec.coeffs.size());
    for (const auto& c : spec.coeffs)
        streams.push_back(stream_of_symbolic(scale == 1 ? c : sym_scale(c, scale)));
    return CoefficientOracle(std::move(streams));
}

/* ---------- subcommand drivers ---------- */

struct CliOptions {
    long initial_precision = 16;
    long max_precision = 1L << 20;
    bool json = true;
    bool show_stats = false;  // text mode: append the stats table
    std::string trace_file;   // empty = no trace
    unsigned long long seed = 1;
    long count = 10;  // verify: number of random instances
};

inline std::string resolve_trace_path(const std::string& file) {
    const char* dir = std::getenv("BITROOT_TRACE_DIR");
    if (!dir || !*dir || file.empty()) return file;
    std::string base = file;
    size_t slash = base.find_last_of('/');
    if (slash != std::string::npos) base = base.substr(slash + 1);
    return std::string(dir) + "/" + base;
}

namespace detail {

inline Json rational_json(const Rational& r) {
    return Json{{"num", r.get_num().get_str()}, {"den", r.get_den().get_str()}};
}

inline Json phase_json(const PhaseStats& st) {
    long min_label = st.tree_size == 0 ? 0 : st.min_label;
    return Json{{"tree_size", st.tree_size}, {"max_depth", st.max_depth}, {"min_label", min_label}};
}

inline Json stats_json(const RunStats& st) {
    return Json{{"restarts", st.restarts},
                {"certify_seeded", st.certify_seeded},
                {"coefficient_bits", st.coefficient_bits},
                {"isolate", phase_json(st.isolate)},
                {"certify", phase_json(st.certify)}};
}

inline Json outcome_json(const IsolationOutcome& out) {
    Json intervals = Json::array();
    for (const auto& iv : out.intervals)
        intervals.push_back(Json{{"lo", rational_json(iv.lo)},
                                 {"hi", rational_json(iv.hi)},
                                 {"sign_left", iv.sign_left},
                                 {"sign_right", iv.sign_right}});
    return Json{{"degree", out.degree},
                {"gamma", out.gamma},
                {"tau_hat", out.tau_hat},
                {"final_rho", out.stats.final_rho},
                {"intervals", std::move(intervals)},
                {"stats", stats_json(out.stats)}};
}

inline void outcome_text(const IsolationOutcome& out, bool with_stats, std::ostream& os) {
    os << "degree " << out.degree << "\n"
       << "gamma " << out.gamma << "\n"
       << "tau_hat " << out.tau_hat << "\n"
       << "final_rho " << out.stats.final_rho << "\n";
    for (const auto& iv : out.intervals)
        os << "interval lo=" << iv.lo.get_str() << " hi=" << iv.hi.get_str()
           << " sign_left=" << iv.sign_left << " sign_right=" << iv.sign_right << "\n";
    if (with_stats) {
        const RunStats& st = out.stats;
        os << "stats restarts=" << st.restarts << " certify_seeded=" << st.certify_seeded
           << " coefficient_bits=" << st.coefficient_bits << "\n"
           << "stats isolate tree_size=" << st.isolate.tree_size
           << " max_depth=" << st.isolate.max_depth
           << " min_label=" << (st.isolate.tree_size ? st.isolate.min_label : 0) << "\n"
           << "stats certify tree_size=" << st.certify.tree_size
           << " max_depth=" << st.certify.max_depth
           << " min_label=" << (st.certify.tree_size ? st.certify.min_label : 0) << "\n";
    }
}

class TraceFile {
  public:
    explicit TraceFile(const std::string& file) {
        if (file.empty()) return;
        path_ = resolve_trace_path(file);
        stream_.open(path_);
        if (!stream_) throw parse_error("cannot open trace file '" + path_ + "'", 0);
        sink_ = [this](const TraceEntry& e) {
            Json j{{"phase", std::string(1, e.phase)}, {"depth", e.depth},
                   {"index", e.index.get_str()},      {"rho", e.rho_node},
                   {"action", e.action},              {"value", e.value}};
            if (!instance_.empty()) j["instance"] = instance_;
            stream_ << j.dump() << "\n";
        };
    }
    const TraceSink* sink() const { return sink_ ? &sink_ : nullptr; }
    void set_instance(std::string name) { instance_ = std::move(name); }

  private:
    std::string path_, instance_;
    std::ofstream stream_;
    TraceSink sink_;
};

}  // namespace detail

inline int run_isolate(const PolySpec& spec, const CliOptions& opt, std::ostream& os,
                       std::ostream& err) {
    CoefficientOracle oracle = oracle_from_spec(spec);
    detail::TraceFile trace(opt.trace_file);
    IsolationOutcome out =
        r_isolate(oracle, opt.initial_precision, opt.max_precision, true, trace.sink());
    if (out.precision_cap_hit) {
        err << "precision cap " << opt.max_precision
            << " reached without certification (is the polynomial square-free?)\n";
        return 2;
    }
    if (opt.json)
        os << detail::outcome_json(out).dump(2) << "\n";
    else
        detail::outcome_text(out, opt.show_stats, os);
    return 0;
}

namespace detail {

struct BenchInstance {
    std::string name;
    RationalPoly F;
};

inline long suite_number(const std::string& s, size_t from, size_t to) {
    try {
        return std::stol(s.substr(from, to - from));
    } catch (const std::exception&) {
        throw parse_error("malformed number in suite '" + s + "'", from);
    }
}

/* "mignotte:LO..HI[:AEXP]" (a = 2^AEXP, default 6) or "random:COUNT[:N[:TAU]]" */
inline std::vector<BenchInstance> bench_suite(const std::string& suite,
                                              unsigned long long seed) {
    std::vector<BenchInstance> out;
    size_t colon = suite.find(':');
    std::string kind = suite.substr(0, colon);
    if (kind == "mignotte") {
        if (colon == std::string::npos) throw parse_error("expected mignotte:LO..HI", 0);
        size_t dots = suite.find("..", colon);
        if (dots == std::string::npos) throw parse_error("expected mignotte:LO..HI", colon);
        long lo = suite_number(suite, colon + 1, dots);
        size_t tail = suite.find(':', dots);
        long hi = suite_number(suite, dots + 2, tail);
        long aexp = 6;
        if (tail != std::string::npos) aexp = suite_number(suite, tail + 1, suite.size());
        if (lo < 3 || hi < lo || aexp < 1 || aexp > 62)
            throw parse_error("mignotte range out of bounds", 0);
        Integer a = Integer(1) << aexp;
        for (long n = lo; n <= hi; ++n)
            out.push_back({"mignotte-n" + std::to_string(n) + "-a" + a.get_str(), mignotte(n, a)});
        return out;
    }
    if (kind == "random") {
        if (colon == std::string::npos) throw parse_error("expected random:COUNT", 0);
        size_t c2 = suite.find(':', colon + 1);
        long count = suite_number(suite, colon + 1, c2);
        long n = 8, tau = 8;
        if (c2 != std::string::npos) {
            size_t c3 = suite.find(':', c2 + 1);
            n = suite_number(suite, c2 + 1, c3);
            if (c3 != std::string::npos) tau = suite_number(suite, c3 + 1, suite.size());
        }
        if (count < 1 || n < 2 || tau < 1) throw parse_error("random suite out of bounds", 0);
        for (long i = 0; i < count; ++i) {
            unsigned long long s = seed + static_cast<unsigned long long>(i);
            out.push_back({"random-s" + std::to_string(s) + "-n" + std::to_string(n) + "-t" +
                               std::to_string(tau),
                           random_squarefree(n, tau, s)});
        }
        return out;
    }
    throw parse_error("unknown suite '" + kind + "' (expected mignotte or random)", 0);
}

inline Json bench_row_json(const std::string& name, const IsolationOutcome& out) {
    return Json{{"instance", name},
                {"degree", out.degree},
                {"cap", out.precision_cap_hit},
                {"final_rho", out.stats.final_rho},
                {"restarts", out.stats.restarts},
                {"intervals", out.intervals.size()},
                {"isolate_tree", out.stats.isolate.tree_size},
                {"isolate_depth", out.stats.isolate.max_depth},
                {"certify_tree", out.stats.certify.tree_size},
                {"certify_depth", out.stats.certify.max_depth},
                {"coefficient_bits", out.stats.coefficient_bits}};
}

}  // namespace detail

inline int run_bench(const std::string& suite, const CliOptions& opt, std::ostream& os,
                     std::ostream& err) {
    std::vector<detail::BenchInstance> instances = detail::bench_suite(suite, opt.seed);
    detail::TraceFile trace(opt.trace_file);
    bool any_cap = false;
    for (const auto& inst : instances) {
        trace.set_instance(inst.name);
        IsolationOutcome out = r_isolate(oracle_from_rationals(inst.F.c), opt.initial_precision,
                                         opt.max_precision, true, trace.sink());
        any_cap = any_cap || out.precision_cap_hit;
        if (opt.json) {
            os << detail::bench_row_json(inst.name, out).dump() << "\n";
        } else {
            os << "bench instance=" << inst.name << " degree=" << out.degree
               << " cap=" << out.precision_cap_hit << " final_rho=" << out.stats.final_rho
               << " restarts=" << out.stats.restarts << " intervals=" << out.intervals.size()
               << " isolate_tree=" << out.stats.isolate.tree_size
               << " certify_tree=" << out.stats.certify.tree_size
               << " coefficient_bits=" << out.stats.coefficient_bits << "\n";
        }
    }
    if (any_cap) {
        err << "one or more bench instances hit the precision cap\n";
        return 2;
    }
    return 0;
}

/* cross-check the adaptive engine against the exact Sturm oracle on random
 * square-free integer polynomials */
inline int run_verify(const CliOptions& opt, std::ostream& os, std::ostream& err) {
    for (long i = 0; i < opt.count; ++i) {
        unsigned long long s = opt.seed + static_cast<unsigned long long>(i);
        long n = 2 + i % 7;
        long tau = 3 + i % 6;
        RationalPoly F = random_squarefree(n, tau, s);
        std::string name = "random-s" + std::to_string(s) + "-n" + std::to_string(n) + "-t" +
                           std::to_string(tau);
        IsolationOutcome out =
            r_isolate(oracle_from_rationals(F.c), opt.initial_precision, opt.max_precision);
        if (out.precision_cap_hit) {
            err << "verify " << name << ": precision cap reached\n";
            return 2;
        }
        std::vector<std::pair<Rational, Rational>> exact = sturm_isolate(F);
        bool ok = exact.size() == out.intervals.size();
        for (size_t k = 0; ok && k < out.intervals.size(); ++k) {
            const auto& iv = out.intervals[k];
            ok = sturm_count(F, iv.lo, iv.hi) == 1 && sgn(eval(F, iv.lo)) == iv.sign_left &&
                 sgn(eval(F, iv.hi)) == iv.sign_right;
            if (k + 1 < out.intervals.size()) ok = ok && !(out.intervals[k + 1].lo < iv.hi);
        }
        if (!ok) {
            err << "verify " << name << ": engine disagrees with the exact oracle\n";
            return 3;
        }
        if (opt.json)
            os << Json{{"instance", name},
                       {"intervals", out.intervals.size()},
                       {"final_rho", out.stats.final_rho},
                       {"status", "ok"}}
                      .dump()
               << "\n";
        else
            os << "verify instance=" << name << " intervals=" << out.intervals.size()
               << " final_rho=" << out.stats.final_rho << " status=ok\n";
    }
    return 0;
}

}  // namespace bitroot

#endif
