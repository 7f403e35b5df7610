#include "fundom/tables.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace fundom {

namespace {

// coefficient x + y w, a sum of terms in 'w' with integer parts
struct RingCoeff {
    Int x{0}, y{0};
};

struct Scanner {
    const std::string &s;
    size_t pos = 0;
    explicit Scanner(const std::string &str) : s(str) {}
    void skip_ws() {
        while (pos < s.size() && std::isspace((unsigned char)s[pos])) pos++;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            pos++;
            return true;
        }
        return false;
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool done() {
        skip_ws();
        return pos >= s.size();
    }
};

RingCoeff parse_ring_sum(Scanner &sc, char stop1, char stop2) {
    RingCoeff out;
    bool any = false;
    while (!sc.done()) {
        char c = sc.peek();
        if (c == stop1 || c == stop2) break;
        int sign = 1;
        while (sc.peek() == '+' || sc.peek() == '-') {
            if (sc.s[sc.pos] == '-') sign = -sign;
            sc.pos++;
        }
        c = sc.peek();
        Int mag;
        bool have_digits = false;
        if (std::isdigit((unsigned char)c)) {
            std::string digits;
            while (sc.pos < sc.s.size() && std::isdigit((unsigned char)sc.s[sc.pos]))
                digits += sc.s[sc.pos++];
            mag = Int(digits);
            have_digits = true;
        }
        if (sc.peek() == 'w') {
            sc.pos++;
            out.y += sign * (have_digits ? mag : Int(1));
        } else if (have_digits) {
            out.x += sign * mag;
        } else {
            throw FamilyError("table entry: expected a coefficient term");
        }
        any = true;
    }
    if (!any) throw FamilyError("table entry: empty coefficient");
    return out;
}

// quaternion expression: sum of [sign] coeff [i|j|k]
void parse_quaternion(const std::string &line, RingCoeff out[4]) {
    Scanner sc(line);
    while (!sc.done()) {
        int sign = 1;
        while (sc.peek() == '+' || sc.peek() == '-') {
            if (sc.s[sc.pos] == '-') sign = -sign;
            sc.pos++;
        }
        RingCoeff coeff;
        bool explicit_coeff = false;
        if (sc.peek() == '(') {
            sc.eat('(');
            coeff = parse_ring_sum(sc, ')', '\0');
            if (!sc.eat(')')) throw FamilyError("table entry: missing ')'");
            explicit_coeff = true;
        } else {
            std::string digits;
            while (sc.pos < sc.s.size() && std::isdigit((unsigned char)sc.s[sc.pos]))
                digits += sc.s[sc.pos++];
            if (!digits.empty()) {
                coeff.x = Int(digits);
                explicit_coeff = true;
            }
            if (sc.peek() == 'w') {
                sc.pos++;
                if (explicit_coeff && coeff.x != 0) {
                    coeff.y = coeff.x;
                    coeff.x = 0;
                } else {
                    coeff.y = 1;
                }
                explicit_coeff = true;
            }
        }
        int slot = 0;
        char c = sc.peek();
        if (c == 'i' || c == 'j' || c == 'k') {
            sc.pos++;
            slot = c == 'i' ? 1 : c == 'j' ? 2 : 3;
            if (!explicit_coeff) coeff.x = 1;
        } else if (!explicit_coeff) {
            throw FamilyError("table entry: dangling sign");
        }
        out[slot].x += sign * coeff.x;
        out[slot].y += sign * coeff.y;
    }
}

// matrix [[e00, e01],[e10, e11]]
void parse_matrix(const std::string &line, RingCoeff out[4]) {
    Scanner sc(line);
    if (!sc.eat('[')) throw FamilyError("table entry: expected '['");
    int slot = 0;
    for (int row = 0; row < 2; row++) {
        if (!sc.eat('[')) throw FamilyError("table entry: expected row '['");
        for (int col = 0; col < 2; col++) {
            out[slot++] = parse_ring_sum(sc, ',', ']');
            if (col == 0 && !sc.eat(',')) throw FamilyError("table entry: expected ','");
        }
        if (!sc.eat(']')) throw FamilyError("table entry: expected row ']'");
        if (row == 0 && !sc.eat(',')) throw FamilyError("table entry: expected ',' between rows");
    }
    if (!sc.eat(']')) throw FamilyError("table entry: expected final ']'");
}

} // namespace

TableEntry parse_table_entry(const Family &fam, const std::string &line) {
    TableEntry e;
    e.text = line;
    try {
        RingCoeff c[4];
        IntVec4 x, y;
        switch (fam.kind()) {
        case FamilyKind::QuatImquad:
        case FamilyKind::QuatGauss:
        case FamilyKind::QuatRat: {
            parse_quaternion(line, c);
            for (int t = 0; t < 4; t++) {
                x[t] = c[t].x;
                y[t] = c[t].y;
            }
            break;
        }
        case FamilyKind::Bianchi: {
            parse_matrix(line, c);
            for (int t = 0; t < 4; t++) {
                x[t] = c[t].x;
                y[t] = c[t].y;
            }
            break;
        }
        case FamilyKind::Cong: {
            if (fam.dimension() == 2) {
                std::istringstream is(line);
                long a, b, cc, d;
                if (!(is >> a >> b >> cc >> d)) throw FamilyError("expected four integers");
                x = IntVec4(a, b, cc, d);
            } else {
                parse_matrix(line, c);
                Int n0(fam.param_n0());
                c[0].x -= 1;
                c[3].x -= 1;
                for (int t = 0; t < 4; t++) {
                    if (c[t].x % n0 != 0 || c[t].y % n0 != 0)
                        throw FamilyError("matrix is not congruent to 1 mod n0");
                    x[t] = c[t].x / n0;
                    y[t] = c[t].y / n0;
                }
            }
            break;
        }
        }
        GroupElement g{x, y, Int(0)};
        if (!fam.satisfies_system(g)) {
            e.reason = "violates the defining system";
            return e;
        }
        e.element = fam.make_element(x, y);
        e.valid = true;
    } catch (const std::exception &ex) {
        e.reason = ex.what();
    }
    return e;
}

std::vector<TableEntry> parse_table_file(const Family &fam, const std::string &path) {
    std::ifstream in(path);
    if (!in) throw FamilyError("cannot open table file " + path);
    std::vector<TableEntry> out;
    std::string line;
    while (std::getline(in, line)) {
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        bool blank = true;
        for (char ch : line)
            if (!std::isspace((unsigned char)ch)) blank = false;
        if (blank) continue;
        out.push_back(parse_table_entry(fam, line));
    }
    return out;
}

} // namespace fundom
