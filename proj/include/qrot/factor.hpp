#pragma once

#include "qrot/rbdd.hpp"

#include <memory>

namespace qrot {

/// Rotation-based factored form: either a cascade leaf or a bi-decomposition
/// g1 Rx(gamma) rest with a Boolean control.
class FactoredForm {
  public:
    static FactoredForm make_leaf(CascadeExpr cas) {
        FactoredForm f;
        f.impl_ = std::make_shared<Impl>(Impl{std::move(cas), nullptr, Angle(), nullptr});
        return f;
    }
    static FactoredForm make_bi(FactoredForm control, Angle gamma, FactoredForm rest) {
        FactoredForm f;
        f.impl_ = std::make_shared<Impl>(
            Impl{CascadeExpr{}, std::make_shared<FactoredForm>(std::move(control)),
                 std::move(gamma), std::make_shared<FactoredForm>(std::move(rest))});
        return f;
    }

    bool is_leaf() const { return impl_->control == nullptr; }
    const CascadeExpr& cascade() const { return impl_->leaf; }
    const FactoredForm& control() const { return *impl_->control; }
    const Angle& gamma() const { return impl_->gamma; }
    const FactoredForm& rest() const { return *impl_->rest; }

    /// Spine [(control, gamma)...] outermost-first, plus the leaf cascade.
    struct Flat {
        std::vector<std::pair<const FactoredForm*, Angle>> spine;
        const CascadeExpr* leaf;
    };
    Flat flatten() const {
        Flat fl;
        const FactoredForm* cur = this;
        while (!cur->is_leaf()) {
            fl.spine.emplace_back(&cur->control(), cur->gamma());
            cur = &cur->rest();
        }
        fl.leaf = &cur->cascade();
        return fl;
    }

  private:
    struct Impl {
        CascadeExpr leaf;
        std::shared_ptr<FactoredForm> control;
        Angle gamma;
        std::shared_ptr<FactoredForm> rest;
    };
    std::shared_ptr<const Impl> impl_;
};

struct BiDecomposition {
    Diagram g1;
    Angle gamma;
    Diagram h;
    int vk;
    Angle alpha1, alpha2;
};

/// One bi-decomposition step at the deepest r-nonlinear variable: alpha2 is
/// the class of the all-zeros assignment, alpha1 the smallest remaining
/// class, gamma = (alpha2 - alpha1)/2, and d = apply(g1, gamma, h).
BiDecomposition bi_decompose(Manager& mgr, const Diagram& d);

/// Algorithm "factor": recursive bi-decomposition down to cascade leaves.
FactoredForm factor(Manager& mgr, const Diagram& d);

Angle eval_form(const FactoredForm& ff, std::uint32_t assignment, int nvars);

/// Rebuild the canonical diagram a form denotes.
Diagram form_diagram(Manager& mgr, const FactoredForm& ff);

std::string cascade_str(const Manager& mgr, const CascadeExpr& cas);
std::string form_str(const Manager& mgr, const FactoredForm& ff);

}  // namespace qrot
