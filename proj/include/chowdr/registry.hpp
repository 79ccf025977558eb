#pragma once

#include "chowdr/geometry.hpp"
#include "chowdr/morphism.hpp"
#include "chowdr/ring.hpp"

#include <map>
#include <string>

namespace chowdr {

/// Named catalog of models, morphisms, families and classes. Built once
/// (either from the compiled-in library or a model file) and read-only
/// afterwards, so concurrent readers need no coordination.
struct Registry {
    std::map<std::string, RingPtr> rings;
    std::map<std::string, MorphPtr> morphisms;
    std::map<std::string, FamilyModel> families;
    std::map<std::string, GradedClass> classes;

    const RingPtr& ring(const std::string& name) const
    {
        auto it = rings.find(name);
        if (it == rings.end())
            throw unknown_model("unknown ring '" + name + "'");
        return it->second;
    }

    const MorphPtr& morphism(const std::string& name) const
    {
        auto it = morphisms.find(name);
        if (it == morphisms.end())
            throw unknown_model("unknown morphism '" + name + "'");
        return it->second;
    }

    const FamilyModel& family(const std::string& name) const
    {
        auto it = families.find(name);
        if (it == families.end())
            throw unknown_model("unknown family '" + name + "'");
        return it->second;
    }

    const GradedClass& named_class(const std::string& name) const
    {
        auto it = classes.find(name);
        if (it == classes.end())
            throw unknown_model("unknown class '" + name + "'");
        return it->second;
    }
};

} // namespace chowdr
