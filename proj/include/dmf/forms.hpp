#pragma once

#include <map>
#include <string>

#include "dmf/carlitz.hpp"

namespace dmf {

// Identifies a generator form: g1/gd(d), h, Delta, E, E_P(P), Delta_T, Delta_W.
struct GeneratorId {
    std::string name;  // "g1", "gd", "h", "Delta", "E", "E_P", "Delta_T", "Delta_W"
    uint32_t d = 1;    // for gd
    Poly P;            // for E_P

    int64_t weight(uint32_t q) const;
    int type(uint32_t q) const;
    Poly level(const FieldPtr& gf) const;
    bool modular() const { return name != "E"; }
    std::string key() const;
};

// Builds and caches the generator u-expansions and Goss tables for one field.
// Cached series are immutable; rebuilding at a higher precision replaces the
// cache entry. Mutation must be externally serialized; reads of a frozen
// context may run concurrently.
class FormContext {
public:
    explicit FormContext(FieldPtr gf) : gf_(std::move(gf)) {}

    const FieldPtr& field() const { return gf_; }

    USeries build_E(int64_t prec);
    USeries build_E_P(const Poly& P, int64_t prec);
    USeries build_g1(int64_t prec) { return build_gd(1, prec); }
    USeries build_gd(uint32_t d, int64_t prec);
    // c_k - sum over monic a of G_{k,period}(u(az)); requires (q-1) | k
    USeries build_eisenstein_normalized(int64_t k, int64_t prec, const Scalar& constant);
    USeries build_Delta(int64_t prec);
    USeries build_Delta_T(int64_t prec);
    USeries build_Delta_W(int64_t prec);
    USeries build_h(int64_t prec);

    // g1^a * Delta^b * h^c
    USeries monomial(int64_t a, int64_t b, int64_t c, int64_t prec);

    USeries generator(const GeneratorId& id, int64_t prec);

    const GossTable& goss_period(int64_t kmax);
    const GossTable& goss_torsion(const Poly& P, int64_t kmax);

private:
    FieldPtr gf_;
    std::map<std::string, USeries> series_cache_;
    std::map<std::string, GossTable> goss_cache_;

    template <class F>
    USeries cached(const std::string& key, int64_t prec, F&& build);
    USeries eis_sum(int64_t k, int64_t prec);  // sum_a G_k(u(az)), no constant
};

}  // namespace dmf
