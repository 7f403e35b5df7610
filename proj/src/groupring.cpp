#include "fundom/groupring.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace fundom {

// --- FiniteGroup -------------------------------------------------------------

FiniteGroup FiniteGroup::from_table(const std::vector<std::vector<int>> &mul,
                                    std::vector<std::string> names) {
    FiniteGroup G;
    G.n_ = (int)mul.size();
    G.mul_ = mul;
    if (names.empty()) {
        for (int i = 0; i < G.n_; i++) names.push_back("g" + std::to_string(i));
    }
    G.names_ = std::move(names);
    G.finalize();
    return G;
}

FiniteGroup FiniteGroup::from_cayley_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw FamilyError("cannot open cayley table file " + path);
    int n;
    if (!(in >> n) || n <= 0) throw FamilyError("cayley file: bad order line");
    std::vector<std::vector<int>> mul(n, std::vector<int>(n));
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) {
            int v;
            if (!(in >> v) || v < 1 || v > n)
                throw FamilyError("cayley file: bad entry at row " + std::to_string(i + 1));
            mul[i][j] = v - 1;
        }
    std::vector<std::string> names;
    std::string nm;
    while (in >> nm) names.push_back(nm);
    if (!names.empty() && (int)names.size() != n)
        throw FamilyError("cayley file: name line must list every element");
    return from_table(mul, names);
}

std::string FiniteGroup::to_cayley_text() const {
    std::ostringstream os;
    os << n_ << "\n";
    for (int i = 0; i < n_; i++) {
        for (int j = 0; j < n_; j++) os << mul_[i][j] + 1 << (j + 1 == n_ ? "" : " ");
        os << "\n";
    }
    return os.str();
}

void FiniteGroup::finalize() {
    for (int j = 0; j < n_; j++)
        if (mul_[0][j] != j || mul_[j][0] != j)
            throw FamilyError("cayley table: element 1 is not the identity");
    for (int i = 0; i < n_; i++) {
        std::vector<bool> seen_r(n_, false), seen_c(n_, false);
        for (int j = 0; j < n_; j++) {
            if (seen_r[mul_[i][j]] || seen_c[mul_[j][i]])
                throw FamilyError("cayley table: not a Latin square");
            seen_r[mul_[i][j]] = seen_c[mul_[j][i]] = true;
        }
    }
    // associativity spot check on random triples
    std::mt19937 rng(1234);
    std::uniform_int_distribution<int> pick(0, n_ - 1);
    for (int t = 0; t < 1000; t++) {
        int a = pick(rng), b = pick(rng), c = pick(rng);
        if (mult(mult(a, b), c) != mult(a, mult(b, c)))
            throw FamilyError("cayley table: associativity fails");
    }
    inv_.assign(n_, -1);
    for (int i = 0; i < n_; i++)
        for (int j = 0; j < n_; j++)
            if (mul_[i][j] == 0) inv_[i] = j;
    order_.assign(n_, 0);
    for (int i = 0; i < n_; i++) {
        int x = i, o = 1;
        while (x != 0) {
            x = mult(x, i);
            o++;
        }
        order_[i] = o;
    }
    // upper central series by iterated centres of quotients
    std::vector<int> level(n_, -1);
    std::vector<int> znow;
    auto in_z = [&](int x) { return level[x] >= 0; };
    int cls = 0;
    while ((int)znow.size() < n_) {
        std::vector<int> next;
        for (int x = 0; x < n_; x++) {
            if (in_z(x)) {
                next.push_back(x);
                continue;
            }
            bool ok = true;
            for (int g = 0; g < n_ && ok; g++) {
                int comm = mult(mult(inverse(x), inverse(g)), mult(x, g));
                if (comm != 0 && !in_z(comm)) ok = false;
            }
            if (ok) next.push_back(x);
        }
        if (next.size() == znow.size()) break; // series stalls: not nilpotent
        cls++;
        for (int x : next)
            if (level[x] < 0) level[x] = cls;
        znow = next;
        std::sort(znow.begin(), znow.end());
        ucs_.push_back(znow);
    }
    nilpotency_class_ = ((int)znow.size() == n_) ? cls : -1;
}

bool FiniteGroup::is_abelian() const {
    for (int i = 0; i < n_; i++)
        for (int j = 0; j < i; j++)
            if (mul_[i][j] != mul_[j][i]) return false;
    return true;
}

long FiniteGroup::euler_phi_order() const {
    long m = n_, result = m;
    for (long p = 2; p * p <= m; p++) {
        if (m % p == 0) {
            while (m % p == 0) m /= p;
            result -= result / p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

std::vector<std::vector<int>> FiniteGroup::conjugacy_classes() const {
    std::vector<std::vector<int>> classes;
    std::vector<bool> seen(n_, false);
    for (int x = 0; x < n_; x++) {
        if (seen[x]) continue;
        std::set<int> cls;
        for (int g = 0; g < n_; g++) cls.insert(conj(x, g));
        std::vector<int> v(cls.begin(), cls.end());
        for (int y : v) seen[y] = true;
        classes.push_back(v);
    }
    return classes;
}

namespace {
std::vector<int> subgroup_closure(const FiniteGroup &G, std::vector<int> gens) {
    std::set<int> s{G.identity()};
    for (int g : gens) s.insert(g);
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<int> cur(s.begin(), s.end());
        for (int a : cur)
            for (int b : cur)
                if (s.insert(G.mult(a, b)).second) grew = true;
    }
    return std::vector<int>(s.begin(), s.end());
}
} // namespace

std::vector<std::vector<int>> FiniteGroup::normal_subgroups() const {
    auto classes = conjugacy_classes();
    std::set<std::vector<int>> found;
    std::vector<std::vector<int>> queue;
    std::vector<int> triv{identity()};
    found.insert(triv);
    queue.push_back(triv);
    while (!queue.empty()) {
        auto N = queue.back();
        queue.pop_back();
        for (const auto &cls : classes) {
            bool inside = std::includes(N.begin(), N.end(), cls.begin(), cls.end());
            if (inside) continue;
            std::vector<int> gens = N;
            gens.insert(gens.end(), cls.begin(), cls.end());
            auto M = subgroup_closure(*this, gens);
            if (found.insert(M).second) queue.push_back(M);
        }
    }
    return std::vector<std::vector<int>>(found.begin(), found.end());
}

FiniteGroup FiniteGroup::quotient(const std::vector<int> &N, std::vector<int> *coset_of) const {
    std::set<int> nset(N.begin(), N.end());
    if (!nset.count(identity())) throw FamilyError("quotient: subgroup must contain the identity");
    for (int x : N)
        for (int g = 0; g < n_; g++)
            if (!nset.count(conj(x, g))) throw FamilyError("quotient: subgroup is not normal");
    std::vector<int> coset(n_, -1);
    std::vector<int> rep;
    for (int x = 0; x < n_; x++) {
        if (coset[x] >= 0) continue;
        int id = (int)rep.size();
        for (int h : N) coset[mult(x, h)] = id;
        rep.push_back(x);
    }
    int id0 = coset[identity()];
    if (id0 != 0) {
        for (auto &c : coset) {
            if (c == id0) c = 0;
            else if (c == 0) c = id0;
        }
        std::swap(rep[0], rep[id0]);
    }
    int q = (int)rep.size();
    std::vector<std::vector<int>> qmul(q, std::vector<int>(q));
    for (int i = 0; i < q; i++)
        for (int j = 0; j < q; j++) qmul[i][j] = coset[mult(rep[i], rep[j])];
    std::vector<std::string> names;
    for (int i = 0; i < q; i++) names.push_back(names_[rep[i]] + "N");
    if (coset_of) *coset_of = coset;
    return from_table(qmul, names);
}

std::optional<FiniteGroup::Q8CnShape> FiniteGroup::q8cn_shape() const {
    // odd-order part C_n and 2-power part Q8; mixed orders are the products
    std::vector<int> odd, twos;
    for (int x = 0; x < n_; x++) {
        int o = order_[x];
        if (o % 2 == 1) odd.push_back(x);
        if (o == 1) {
            twos.push_back(x); // the identity sits in both parts
            continue;
        }
        while (o % 2 == 0) o /= 2;
        if (o == 1 && order_[x] % 2 == 0) twos.push_back(x);
    }
    long n = (long)odd.size();
    if ((long)twos.size() != 8 || 8 * n != n_) return std::nullopt;
    {
        // the 2-power part must be closed under multiplication
        std::set<int> ts(twos.begin(), twos.end());
        for (int x : twos)
            for (int y : twos)
                if (!ts.count(mult(x, y))) return std::nullopt;
    }
    int c = -1;
    for (int x : odd) {
        if (order_[x] == (int)n) c = x;
        for (int g = 0; g < n_; g++)
            if (mult(x, g) != mult(g, x)) return std::nullopt;
    }
    if (n == 1) c = identity();
    if (c < 0) return std::nullopt;
    int involutions = 0;
    for (int x : twos)
        if (order_[x] == 2) involutions++;
    if (involutions != 1) return std::nullopt;
    int a = -1;
    for (int x : twos)
        if (order_[x] == 4) {
            a = x;
            break;
        }
    if (a < 0) return std::nullopt;
    int a2 = mult(a, a);
    int b = -1;
    for (int x : twos) {
        if (order_[x] != 4 || x == a || x == inverse(a)) continue;
        if (mult(x, x) != a2) continue;
        if (mult(mult(x, a), inverse(x)) != inverse(a)) continue;
        b = x;
        break;
    }
    if (b < 0) return std::nullopt;
    if ((int)subgroup_closure(*this, {a, b}).size() != 8) return std::nullopt;
    if (mult(a, b) == mult(b, a)) return std::nullopt;
    return Q8CnShape{a, b, c, n};
}

FiniteGroup FiniteGroup::cyclic(int n) {
    std::vector<std::vector<int>> mul(n, std::vector<int>(n));
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) mul[i][j] = (i + j) % n;
    return from_table(mul);
}

FiniteGroup FiniteGroup::dihedral8() {
    // elements a^i b^e, index i + 4e; b a^j = a^{-j} b
    std::vector<std::vector<int>> mul(8, std::vector<int>(8));
    for (int x = 0; x < 8; x++)
        for (int y = 0; y < 8; y++) {
            int i = x % 4, e = x / 4, j = y % 4, f = y / 4;
            int i2 = e ? (i + 4 - j) % 4 : (i + j) % 4;
            mul[x][y] = i2 + 4 * ((e + f) % 2);
        }
    return from_table(mul);
}

FiniteGroup FiniteGroup::quaternion8() {
    // elements a^i b^e; a^4 = 1, b^2 = a^2, b a b^{-1} = a^{-1}
    std::vector<std::vector<int>> mul(8, std::vector<int>(8));
    for (int x = 0; x < 8; x++)
        for (int y = 0; y < 8; y++) {
            int i = x % 4, e = x / 4, j = y % 4, f = y / 4;
            int i2 = e ? (i + 4 - j) % 4 : (i + j) % 4;
            int carry = (e && f) ? 2 : 0;
            mul[x][y] = (i2 + carry) % 4 + 4 * ((e + f) % 2);
        }
    return from_table(mul);
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup &A, const FiniteGroup &B) {
    int na = A.size(), nb = B.size();
    std::vector<std::vector<int>> mul(na * nb, std::vector<int>(na * nb));
    std::vector<std::string> names;
    for (int i = 0; i < na * nb; i++) names.push_back(A.name_of(i % na) + "." + B.name_of(i / na));
    for (int x = 0; x < na * nb; x++)
        for (int y = 0; y < na * nb; y++)
            mul[x][y] = A.mult(x % na, y % na) + na * B.mult(x / na, y / na);
    return from_table(mul, names);
}

// --- GroupRingElement ----------------------------------------------------------

GroupRingElement GroupRingElement::basis(const FiniteGroup *G, int g) {
    GroupRingElement e(G);
    e.c_[g] = 1;
    return e;
}

GroupRingElement GroupRingElement::hat(const FiniteGroup *G, int g) {
    GroupRingElement e(G);
    int x = G->identity();
    for (int k = 0; k < G->order_of(g); k++) {
        e.c_[x] += 1;
        x = G->mult(x, g);
    }
    return e;
}

GroupRingElement GroupRingElement::average(const FiniteGroup *G, const std::vector<int> &X) {
    GroupRingElement e(G);
    Rat w = make_rat(1, (long)X.size());
    for (int x : X) e.c_[x] += w;
    return e;
}

Rat GroupRingElement::coeff(int g) const {
    auto it = c_.find(g);
    return it == c_.end() ? Rat(0) : it->second;
}

void GroupRingElement::set(int g, const Rat &v) {
    if (v == 0) c_.erase(g);
    else c_[g] = v;
}

void GroupRingElement::trim() {
    for (auto it = c_.begin(); it != c_.end();) {
        if (it->second == 0) it = c_.erase(it);
        else ++it;
    }
}

GroupRingElement GroupRingElement::operator+(const GroupRingElement &o) const {
    GroupRingElement r = *this;
    if (!r.G_) r.G_ = o.G_;
    for (auto &[g, v] : o.c_) r.c_[g] += v;
    r.trim();
    return r;
}

GroupRingElement GroupRingElement::operator-(const GroupRingElement &o) const {
    GroupRingElement r = *this;
    if (!r.G_) r.G_ = o.G_;
    for (auto &[g, v] : o.c_) r.c_[g] -= v;
    r.trim();
    return r;
}

GroupRingElement GroupRingElement::operator*(const GroupRingElement &o) const {
    GroupRingElement r(G_ ? G_ : o.G_);
    for (auto &[g, v] : c_)
        for (auto &[h, w] : o.c_) r.c_[r.G_->mult(g, h)] += v * w;
    r.trim();
    return r;
}

GroupRingElement GroupRingElement::operator*(const Rat &s) const {
    GroupRingElement r = *this;
    for (auto &[g, v] : r.c_) v *= s;
    r.trim();
    return r;
}

bool GroupRingElement::operator==(const GroupRingElement &o) const { return c_ == o.c_; }

GroupRingElement GroupRingElement::conj_by(int x) const {
    GroupRingElement r(G_);
    for (auto &[g, v] : c_) r.c_[G_->conj(g, x)] += v;
    r.trim();
    return r;
}

Rat GroupRingElement::augmentation() const {
    Rat s(0);
    for (auto &[g, v] : c_) s += v;
    return s;
}

bool GroupRingElement::is_integral() const {
    for (auto &[g, v] : c_)
        if (v.get_den() != 1) return false;
    return true;
}

bool GroupRingElement::is_zero() const { return c_.empty(); }

bool GroupRingElement::is_central() const {
    for (int x = 0; x < G_->size(); x++)
        if (!(conj_by(x) == *this)) return false;
    return true;
}

// --- unit constructions ----------------------------------------------------------

GroupRingElement bass_unit(const FiniteGroup &G, int g, long i) {
    long o = G.order_of(g);
    if (!(1 < i && i < o)) throw FamilyError("bass_unit: need 1 < i < o(g)");
    if (std::gcd(i, o) != 1) throw FamilyError("bass_unit: need gcd(i, o(g)) = 1");
    long m = G.euler_phi_order();
    GroupRingElement partial(&G);
    int x = G.identity();
    for (long k = 0; k < i; k++) {
        partial.set(x, partial.coeff(x) + 1);
        x = G.mult(x, g);
    }
    GroupRingElement power = GroupRingElement::unit(&G);
    for (long k = 0; k < m; k++) power = power * partial;
    Int im = 1;
    for (long k = 0; k < m; k++) im *= i;
    Rat factor = make_rat(1 - im, o);
    if (factor.get_den() != 1) throw FamilyError("bass_unit: non-integral correction");
    return power + GroupRingElement::hat(&G, g) * factor;
}

std::pair<GroupRingElement, GroupRingElement> bicyclic_units(const FiniteGroup &G, int g, int h) {
    GroupRingElement one = GroupRingElement::unit(&G);
    GroupRingElement eg = GroupRingElement::basis(&G, g);
    GroupRingElement eh = GroupRingElement::basis(&G, h);
    GroupRingElement ghat = GroupRingElement::hat(&G, g);
    GroupRingElement u = one + (one - eg) * eh * ghat;
    GroupRingElement v = one + ghat * eh * (one - eg);
    return {u, v};
}

GroupRingElement central_bass_power(const FiniteGroup &G, const GroupRingElement &b) {
    if (G.nilpotency_class() < 0)
        throw FamilyError("central_bass_power: group is not nilpotent");
    GroupRingElement cur = b;
    const auto &ucs = G.upper_central_series();
    for (size_t i = 1; i < ucs.size(); i++) {
        GroupRingElement prod = GroupRingElement::unit(&G);
        for (int x : ucs[i]) prod = prod * cur.conj_by(x);
        cur = prod;
    }
    return cur;
}

bool unit_check(const GroupRingElement &u) {
    const FiniteGroup &G = *u.group();
    int n = G.size();
    if (!u.is_integral()) return false;
    // left regular representation; solve M x = e_1 and track the determinant
    std::vector<std::vector<Rat>> M(n, std::vector<Rat>(n, Rat(0)));
    for (auto &[g, v] : u.coeffs())
        for (int h = 0; h < n; h++) M[G.mult(g, h)][h] += v;
    std::vector<Rat> rhs(n, Rat(0));
    rhs[G.identity()] = 1;
    Rat det(1);
    for (int col = 0; col < n; col++) {
        int piv = -1;
        for (int r = col; r < n; r++)
            if (M[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return false;
        if (piv != col) {
            std::swap(M[piv], M[col]);
            std::swap(rhs[piv], rhs[col]);
            det = -det;
        }
        det *= M[col][col];
        Rat inv = 1 / M[col][col];
        for (int c = col; c < n; c++) M[col][c] *= inv;
        rhs[col] *= inv;
        for (int r = 0; r < n; r++) {
            if (r == col || M[r][col] == 0) continue;
            Rat f = M[r][col];
            for (int c = col; c < n; c++) M[r][c] -= f * M[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    if (!(det == 1 || det == -1)) return false;
    for (int r = 0; r < n; r++)
        if (rhs[r].get_den() != 1) return false;
    return true;
}

Q8CnBlock q8cn_matrix_units(const FiniteGroup &G, const std::vector<int> &N, long p,
                            long product_len, long twist) {
    Q8CnBlock blk;
    std::vector<int> coset;
    FiniteGroup Q = G.quotient(N, &coset);
    auto shape = Q.q8cn_shape();
    if (!shape) {
        blk.reject_reason = "quotient is not Q8 x Cn";
        return blk;
    }
    long n = shape->n;
    blk.n = n;
    blk.p = p;
    blk.product_len = product_len;
    blk.twist = twist;
    if (n <= 1 || p <= 1 || n % p != 0) {
        blk.reject_reason = "p must be a nontrivial prime divisor of n";
        return blk;
    }
    auto lift = [&](int q) {
        for (int x = 0; x < G.size(); x++)
            if (coset[x] == q) return x;
        throw FamilyError("q8cn: missing coset representative");
    };
    int a = lift(shape->a), b = lift(shape->b), c = lift(shape->c);

    const FiniteGroup *Gp = &G;
    GroupRingElement one = GroupRingElement::unit(Gp);
    GroupRingElement Ntilde = GroupRingElement::average(Gp, N);
    GroupRingElement ea = GroupRingElement::basis(Gp, a);
    GroupRingElement eb = GroupRingElement::basis(Gp, b);
    GroupRingElement chat(Gp);
    {
        int x = G.identity();
        for (long k = 0; k < n; k++) {
            chat = chat + GroupRingElement::basis(Gp, x);
            x = G.mult(x, c);
        }
    }
    GroupRingElement e = Ntilde * (one - ea * ea) * (one - chat * make_rat(1, n)) * rat_of(1, 2);
    long s = n / p;
    auto cpow = [&](long k) {
        long kk = ((k % n) + n) % n;
        int x = G.identity();
        for (long t = 0; t < kk; t++) x = G.mult(x, c);
        return GroupRingElement::basis(Gp, x);
    };
    GroupRingElement alpha = cpow(s * twist);
    long e2 = 1;
    for (long k = 0; k < product_len; k++) {
        alpha = alpha * (one + eb * cpow(s * e2));
        e2 = (e2 * 2) % n;
    }
    GroupRingElement binv = GroupRingElement::basis(Gp, G.inverse(b));
    GroupRingElement b3 = GroupRingElement::basis(Gp, G.mult(G.mult(b, b), b));
    GroupRingElement x_el = (alpha + eb * alpha * binv) * rat_of(1, 2);
    GroupRingElement y_el = b3 * (alpha - eb * alpha * binv) * rat_of(1, 2);
    GroupRingElement w = x_el * ea + y_el * ea * eb;
    GroupRingElement E11 = e * (one + w) * rat_of(1, 2);
    GroupRingElement E22 = e * (one - w) * rat_of(1, 2);

    blk.e = e;
    blk.E11 = E11;
    blk.E22 = E22;
    if (!(e * e == e) || !e.is_central()) {
        blk.reject_reason = "e is not a central idempotent";
        return blk;
    }
    if (!(E11 * E11 == E11)) {
        blk.reject_reason = "E11 fails idempotency for these parameters";
        return blk;
    }
    if (!(E11 * E22).is_zero() || !(E11 + E22 == e)) {
        blk.reject_reason = "E11, E22 are not orthogonal idempotents summing to e";
        return blk;
    }
    blk.valid = true;
    return blk;
}

GroupRingElement q8cn_unit(const FiniteGroup &G, const Q8CnBlock &blk, int g,
                           const std::vector<int> &N, bool prime_side) {
    if (!blk.valid) throw FamilyError("q8cn_unit: invalid block: " + blk.reject_reason);
    long m = (long)N.size() * 2 * blk.n;
    GroupRingElement eg = GroupRingElement::basis(&G, g);
    GroupRingElement rad = prime_side ? blk.E11 * eg * blk.E22 : blk.E22 * eg * blk.E11;
    GroupRingElement scaled = rad * Rat(m);
    // m does not always clear the idempotent denominators; take the smallest
    // multiple of m that lands in ZG (the radical stays square-zero)
    Int extra = 1;
    for (auto &[h, v] : scaled.coeffs()) {
        Int den = v.get_den();
        extra = extra * den / gcd(extra, den);
    }
    if (extra != 1) scaled = scaled * Rat(extra);
    return GroupRingElement::unit(&G) + scaled;
}

// --- manifest ---------------------------------------------------------------------

std::optional<std::pair<std::string, long>> exceptional_component_table(const std::string &tag) {
    if (tag == "D8") return std::make_pair(std::string("Z"), 8L);
    if (tag == "D16-") return std::make_pair(std::string("Zsqrt-2"), 8L);
    if (tag == "D16+") return std::make_pair(std::string("Zi"), 8L);
    if (tag == "Dcal") return std::make_pair(std::string("Zi"), 2L);
    if (tag == "D8xC3") return std::make_pair(std::string("Zsqrt-3"), 24L);
    if (tag == "Q8xC3") return std::make_pair(std::string("Zsqrt-3"), 24L);
    if (tag == "D+") return std::make_pair(std::string("Zi"), 32L);
    return std::nullopt;
}

namespace {
long order_of_2_mod(long n) {
    long o = 1, x = 2 % n;
    while (x != 1) {
        x = (x * 2) % n;
        o++;
        if (o > n) throw FamilyError("order_of_2_mod: broken modulus");
    }
    return o;
}
} // namespace

GeneratorManifest assemble_generator_manifest(const FiniteGroup &G,
                                              const std::vector<ExceptionalRow> &config) {
    if (G.nilpotency_class() < 0) throw UnsupportedComponent("group is not nilpotent");
    GeneratorManifest man;
    man.group_order = G.size();
    man.nilpotency_class = G.nilpotency_class();

    std::set<std::vector<std::pair<int, std::string>>> seen;
    auto key = [](const GroupRingElement &e) {
        std::vector<std::pair<int, std::string>> k;
        for (auto &[g, v] : e.coeffs()) k.push_back({g, v.get_str()});
        return k;
    };
    // (i) central powers of the Bass units
    for (int g = 0; g < G.size(); g++) {
        long o = G.order_of(g);
        for (long i = 2; i < o; i++) {
            if (std::gcd(i, o) != 1) continue;
            GroupRingElement bn = central_bass_power(G, bass_unit(G, g, i));
            if (bn == GroupRingElement::unit(&G)) continue;
            if (seen.insert(key(bn)).second) man.bass.push_back(bn);
        }
    }
    // (ii) bicyclic units
    for (int g = 0; g < G.size(); g++)
        for (int h = 0; h < G.size(); h++) {
            auto [u, v] = bicyclic_units(G, g, h);
            if (!(u == GroupRingElement::unit(&G)) && seen.insert(key(u)).second)
                man.bicyclic.push_back(u);
            if (!(v == GroupRingElement::unit(&G)) && seen.insert(key(v)).second)
                man.bicyclic.push_back(v);
        }

    // (iii) congruence references from the supplied exceptional rows
    for (const auto &row : config) {
        if (row.m2hq) throw UnsupportedComponent("M2(H(Q)) component at a 2-group quotient");
        auto entry = exceptional_component_table(row.quotient);
        if (!entry) throw FamilyError("unknown exceptional quotient tag " + row.quotient);
        long want = entry->second * (long)row.normal_subgroup.size();
        if (row.ring != entry->first || row.level != want)
            throw FamilyError("exceptional row for " + row.quotient +
                              " disagrees with the component table");
        CongruenceRef ref;
        ref.quotient = row.quotient;
        ref.ring = row.ring;
        ref.level = row.level;
        ref.normal_subgroup = row.normal_subgroup;
        man.congruence.push_back(ref);
    }

    // (iv) Q8 x Cn quotients with 2 of even order mod n; odd order is the
    // division-algebra exclusion
    for (const auto &N : G.normal_subgroups()) {
        if ((int)N.size() == G.size()) continue;
        std::vector<int> coset;
        FiniteGroup Q = G.quotient(N, &coset);
        auto shape = Q.q8cn_shape();
        if (!shape || shape->n == 1) continue;
        long n = shape->n;
        if (order_of_2_mod(n) % 2 == 1)
            throw UnsupportedComponent("quotient Q8 x C" + std::to_string(n) +
                                       " with 2 of odd order mod n (division algebra)");
        Q8CnBlock chosen;
        for (long p = 2; p <= n && !chosen.valid; p++) {
            if (n % p != 0) continue;
            bool prime = true;
            for (long d = 2; d * d <= p; d++)
                if (p % d == 0) prime = false;
            if (!prime) continue;
            long ord = order_of_2_mod(p);
            for (long len = 1; len <= 2 * ord && !chosen.valid; len++)
                for (long tw = 0; tw < p && !chosen.valid; tw++) {
                    Q8CnBlock blk = q8cn_matrix_units(G, N, p, len, tw);
                    if (blk.valid) chosen = blk;
                }
        }
        if (!chosen.valid)
            throw FamilyError("no validating matrix-unit parameters for a Q8 x Cn quotient");
        man.q8cn_params.push_back("n=" + std::to_string(chosen.n) + " p=" + std::to_string(chosen.p) +
                                  " len=" + std::to_string(chosen.product_len) +
                                  " twist=" + std::to_string(chosen.twist));
        std::set<std::vector<std::pair<int, std::string>>> local;
        for (int g = 0; g < G.size(); g++) {
            for (bool side : {true, false}) {
                GroupRingElement u = q8cn_unit(G, chosen, g, N, side);
                if (u == GroupRingElement::unit(&G)) continue;
                if (!u.is_integral()) throw FamilyError("q8cn unit fails integrality");
                if (!unit_check(u)) throw FamilyError("q8cn unit fails the unit check");
                if (local.insert(key(u)).second) man.q8cn.push_back(u);
            }
        }
    }
    return man;
}

GroupRingElement embed_congruence_matrix(const FiniteGroup &G, const ExceptionalRow &row,
                                         const std::array<Rat, 4> &gamma_entries) {
    auto need = [&](const std::string &k) {
        auto it = row.matrix_units.find(k);
        if (it == row.matrix_units.end()) throw FamilyError("exceptional row lacks matrix unit " + k);
        return it->second;
    };
    GroupRingElement e = need("e");
    GroupRingElement E[4] = {need("E11"), need("E12"), need("E21"), need("E22")};
    GroupRingElement out = GroupRingElement::unit(&G) - e;
    for (int k = 0; k < 4; k++) out = out + E[k] * gamma_entries[k];
    return out;
}

} // namespace fundom
