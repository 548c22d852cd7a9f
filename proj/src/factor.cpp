#include "qrot/factor.hpp"

#include <algorithm>
#include <sstream>

namespace qrot {

BiDecomposition bi_decompose(Manager& mgr, const Diagram& d) {
    auto vk_opt = mgr.lowest_rnonlinear(d);
    if (!vk_opt)
        throw DiagramError("bi_decompose: diagram is a chain; use to_cascade instead");
    int vk = *vk_opt;

    auto classes = mgr.angle_classes(d, vk);
    Angle alpha2 = mgr.origin_class(d, vk);
    std::optional<Angle> alpha1;
    for (const Angle& a : classes)
        if (a != alpha2 && (!alpha1 || a < *alpha1)) alpha1 = a;
    if (!alpha1) throw DiagramError("bi_decompose: variable has a single angle class");

    Angle gamma = Angle::half_difference(alpha2, *alpha1);
    Diagram g1 = mgr.g1_extract(d, vk, *alpha1);
    Diagram h = mgr.apply(g1, gamma.negated(), d);
    if (mgr.apply(g1, gamma, h) != d)
        throw DiagramError("internal: bi-decomposition failed to recompose");
    return BiDecomposition{g1, gamma, h, vk, *alpha1, alpha2};
}

FactoredForm factor(Manager& mgr, const Diagram& d) {
    if (auto cas = mgr.to_cascade(d)) return FactoredForm::make_leaf(std::move(*cas));
    BiDecomposition bd = bi_decompose(mgr, d);
    return FactoredForm::make_bi(factor(mgr, bd.g1), bd.gamma, factor(mgr, bd.h));
}

Angle eval_form(const FactoredForm& ff, std::uint32_t assignment, int nvars) {
    if (ff.is_leaf()) {
        const CascadeExpr& cas = ff.cascade();
        Angle acc = cas.prefix;
        for (const auto& [v, theta] : cas.terms)
            if ((assignment >> (nvars - 1 - v)) & 1u) acc = acc + theta;
        return acc;
    }
    Angle acc = eval_form(ff.rest(), assignment, nvars);
    if (eval_form(ff.control(), assignment, nvars).is_pi()) acc = acc + ff.gamma();
    return acc;
}

Diagram form_diagram(Manager& mgr, const FactoredForm& ff) {
    if (ff.is_leaf()) {
        const CascadeExpr& cas = ff.cascade();
        Diagram d = mgr.terminal();
        for (auto it = cas.terms.rbegin(); it != cas.terms.rend(); ++it)
            d = mgr.mk_node(it->first, d, mgr.rotate(d, it->second));
        return mgr.rotate(d, cas.prefix);
    }
    return mgr.apply(form_diagram(mgr, ff.control()), ff.gamma(),
                     form_diagram(mgr, ff.rest()));
}

static const char* axis_name(Axis a) { return a == Axis::X ? "Rx" : "Rz"; }

std::string cascade_str(const Manager& mgr, const CascadeExpr& cas) {
    std::ostringstream os;
    int closes = 0;
    if (!cas.prefix.is_zero()) {
        os << axis_name(cas.axis) << "(" << cas.prefix.str() << ")[";
        ++closes;
    }
    for (size_t i = 0; i < cas.terms.size(); ++i) {
        os << mgr.var_name(cas.terms[i].first) << " " << axis_name(cas.axis) << "("
           << cas.terms[i].second.str() << ")";
        if (i + 1 < cas.terms.size()) {
            os << "[";
            ++closes;
        } else {
            os << " ";
        }
    }
    os << "0";
    while (closes--) os << "]";
    return os.str();
}

std::string form_str(const Manager& mgr, const FactoredForm& ff) {
    if (ff.is_leaf()) return cascade_str(mgr, ff.cascade());
    std::ostringstream os;
    os << "[" << form_str(mgr, ff.control()) << "] " << axis_name(mgr.axis()) << "("
       << ff.gamma().str() << ") [" << form_str(mgr, ff.rest()) << "]";
    return os.str();
}

}  // namespace qrot
