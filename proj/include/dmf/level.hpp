#pragma once

#include <map>
#include <optional>
#include <string>

#include "dmf/forms.hpp"
#include "dmf/hecke.hpp"

namespace dmf {

// Exact linear combination of registered form handles. All handles in the
// support share weight and type; the zero expression has an empty map. The
// ambient level records which congruence group the expression is viewed at
// (a multiple of every handle level).
class FormExpr {
public:
    FormExpr() = default;
    FormExpr(FieldPtr gf, int64_t weight, int type, Poly ambient);

    static FormExpr single(const FieldPtr& gf, const std::string& handle, int64_t weight, int type,
                           const Poly& ambient);

    const FieldPtr& field() const { return gf_; }
    int64_t weight() const { return weight_; }
    int type() const { return type_; }
    const Poly& ambient() const { return ambient_; }
    const std::map<std::string, Scalar>& coords() const { return c_; }

    bool is_zero() const { return c_.empty(); }

    void add(const std::string& handle, const Scalar& c);
    FormExpr operator+(const FormExpr& o) const;
    FormExpr operator-(const FormExpr& o) const;
    FormExpr operator-() const;
    FormExpr scaled(const Scalar& s) const;
    FormExpr with_ambient(Poly ambient) const;

    bool operator==(const FormExpr& o) const { return c_ == o.c_; }

    std::string str() const;

private:
    FieldPtr gf_;
    int64_t weight_ = 0;
    int type_ = 0;
    Poly ambient_;
    std::map<std::string, Scalar> c_;
};

struct RegistryEntry {
    enum class Kind { generator, monomial, delta_image, product, frob_power };
    Kind kind = Kind::generator;
    std::string handle;
    GeneratorId gen;                      // generator
    int64_t ma = 0, mb = 0, mc = 0;       // monomial exponents g1^a Delta^b h^c
    std::string base, other;              // delta_image/frob_power base, product rhs
    Poly delta_prime;                     // delta_image prime
    uint32_t frob_n = 0;

    int64_t weight = 0;
    int type = 0;
    Poly level;
    bool modular = true;
    std::optional<int64_t> t_eigen_exp;   // T_P f = P^e f for every P coprime to level
    std::optional<int64_t> u_eigen_exp;   // U_P f = P^e f at the single prime P = level
    std::map<std::string, FormExpr> w_table;  // key: prime_str + "^" + alpha
};

// Outcome of a trace computation: exact symbolic expression when the operator
// algebra closes, otherwise a certified-precision series.
struct TraceResult {
    bool symbolic = false;
    FormExpr expr;
    USeries series;

    bool is_exact_zero() const { return symbolic && expr.is_zero(); }
};

enum class Membership { yes_exact, yes_to_precision, no };

struct MembershipResult {
    Membership verdict = Membership::no;
    int64_t certified_prec = 0;  // for yes_to_precision
    Poly witness_prime;          // for no: the prime whose trace is nonzero
    int64_t witness_index = -1;  // first nonzero series coefficient
    std::string detail;
};

// Registry of named forms with symbolic Atkin-Lehner, degeneracy, and Hecke
// closure rules, backed by ground-truth series. Registration must be
// serialized; queries on a frozen registry may run concurrently.
class FormRegistry {
public:
    explicit FormRegistry(FieldPtr gf) : gf_(std::move(gf)), forms_(gf_) {}

    const FieldPtr& field() const { return gf_; }
    FormContext& forms() { return forms_; }

    bool has(const std::string& handle) const { return entries_.count(handle) > 0; }
    const RegistryEntry& entry(const std::string& handle) const;

    std::string add_generator(const GeneratorId& id);  // rejects non-modular generators
    std::string add_monomial(int64_t a, int64_t b, int64_t c);
    std::string add_product(const std::string& f, const std::string& g);
    std::string add_frob_power(const std::string& f, uint32_t n);

    // registers delta_1 phi (= phi at the bigger level) and delta_P phi with
    // their mutual W_P actions; requires P coprime to phi's level
    std::pair<FormExpr, FormExpr> register_delta_images(const std::string& phi, const PrimeP& P);

    void set_w_action(const std::string& handle, const Poly& prime, uint32_t alpha,
                      const FormExpr& image);
    void set_t_eigen(const std::string& handle, int64_t exp);
    void set_u_eigen_own_prime(const std::string& handle);

    FormExpr expr(const std::string& handle, const Poly& ambient) const;
    FormExpr expr(const std::string& handle) const;

    USeries series(const std::string& handle, int64_t prec);
    USeries series(const FormExpr& e, int64_t prec);

    // symbolic operators; throw unknown_action_error when no rule applies
    FormExpr w_action(const FormExpr& e, const Poly& prime, uint32_t alpha = 1);
    FormExpr delta_image(const FormExpr& e, const PrimeP& P);   // delta_P, linear
    FormExpr u_action(const FormExpr& e, const PrimeP& P);
    FormExpr t_action(const FormExpr& e, const PrimeP& P);
    FormExpr expr_mul(const FormExpr& a, const FormExpr& b);
    FormExpr expr_frobenius(const FormExpr& e, uint32_t n);

    // Tr^{n}_{n/p} for p || n (alpha = 1 branch); falls back to series at
    // series_prec when the symbolic route is not closed
    TraceResult trace(const FormExpr& e, const PrimeP& p, int64_t series_prec);
    TraceResult trace_prime(const FormExpr& e, const PrimeP& p, int64_t series_prec);
    // alpha >= 2 branch; symbolic only
    TraceResult trace_high_alpha(const FormExpr& e, const PrimeP& p, uint32_t alpha);

    MembershipResult is_p_new(const FormExpr& e, const PrimeP& p, int64_t series_prec);
    MembershipResult is_in_new(const FormExpr& e, const std::vector<PrimeP>& primes,
                               int64_t series_prec);
    MembershipResult is_in_old(const FormExpr& e, const std::vector<PrimeP>& primes);

private:
    FieldPtr gf_;
    FormContext forms_;
    std::map<std::string, RegistryEntry> entries_;
    std::map<std::string, USeries> series_cache_;

    std::string intern(RegistryEntry e);
    std::string delta_handle(const std::string& base, const PrimeP& P);
    FormExpr w_action_handle(const std::string& handle, const Poly& prime, uint32_t alpha);
    FormExpr u_action_handle(const std::string& handle, const PrimeP& P);
};

}  // namespace dmf
