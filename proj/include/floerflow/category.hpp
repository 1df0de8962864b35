#pragma once

// Flow-category data: objects with an index, rigid (0-dimensional) flows,
// and 1-dimensional moduli described by their components and broken-flow
// endpoints. Higher-dimensional morphism spaces are carried only by their
// stratification (see corners.hpp).

#include <array>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "json_util.hpp"

namespace floerflow {

struct CategoryObject
{
    std::string id;
    int index = 0;

    friend bool operator==(CategoryObject const&, CategoryObject const&) = default;
};

struct RigidFlow
{
    std::string id;
    std::string from;
    std::string to;

    friend bool operator==(RigidFlow const&, RigidFlow const&) = default;
};

/// A once-broken flow a -> c -> b, given by its two rigid pieces.
struct BrokenFlow
{
    std::string through;
    std::string first;  // rigid flow a -> c
    std::string second; // rigid flow c -> b

    friend auto operator<=>(BrokenFlow const&, BrokenFlow const&) = default;
};

struct ModuliComponent
{
    enum class Kind { Interval, Circle };

    Kind kind = Kind::Circle;
    std::array<BrokenFlow, 2> ends{}; // intervals only

    static ModuliComponent circle() { return {}; }
    static ModuliComponent interval(BrokenFlow a, BrokenFlow b)
    {
        return ModuliComponent{Kind::Interval, {std::move(a), std::move(b)}};
    }

    friend bool operator==(ModuliComponent const&, ModuliComponent const&) = default;
};

struct OneDimModuli
{
    std::string from;
    std::string to;
    std::vector<ModuliComponent> components;

    friend bool operator==(OneDimModuli const&, OneDimModuli const&) = default;
};

/// Sign of each rigid flow.
struct OrientationData
{
    std::map<std::string, int> sign;

    int signOf(std::string const& flowId) const
    {
        auto it = sign.find(flowId);
        if (it == sign.end())
            throw Error(Errc::InvalidCategory, "no sign for flow '" + flowId + "'");
        return it->second;
    }

    friend bool operator==(OrientationData const&, OrientationData const&) = default;
};

class FlowCategory
{
public:
    FlowCategory() = default;

    /// Checks referential integrity only; the category axioms are the job
    /// of validateMorseSmale.
    FlowCategory(std::vector<CategoryObject> objects, std::vector<RigidFlow> flows,
                 std::vector<OneDimModuli> moduli)
        : objects_(std::move(objects)), flows_(std::move(flows)), moduli_(std::move(moduli))
    {
        for (std::size_t i = 0; i < objects_.size(); ++i)
            if (!objectPos_.emplace(objects_[i].id, i).second)
                throw Error(Errc::InvalidCategory, "duplicate object '" + objects_[i].id + "'");
        for (std::size_t i = 0; i < flows_.size(); ++i) {
            auto const& f = flows_[i];
            if (!flowPos_.emplace(f.id, i).second)
                throw Error(Errc::InvalidCategory, "duplicate flow '" + f.id + "'");
            requireObject(f.from);
            requireObject(f.to);
        }
        for (auto& m : moduli_) {
            requireObject(m.from);
            requireObject(m.to);
            for (auto& c : m.components) {
                if (c.kind != ModuliComponent::Kind::Interval)
                    continue;
                for (auto& e : c.ends) {
                    requireFlow(e.first);
                    requireFlow(e.second);
                    e.through = flow(e.first).to;
                }
            }
        }
        computeOrder();
    }

    std::vector<CategoryObject> const& objects() const { return objects_; }
    std::vector<RigidFlow> const& rigidFlows() const { return flows_; }
    std::vector<OneDimModuli> const& oneDimModuli() const { return moduli_; }

    bool hasObject(std::string const& id) const { return objectPos_.count(id) != 0; }

    int index(std::string const& id) const { return objects_[requireObject(id)].index; }

    RigidFlow const& flow(std::string const& id) const { return flows_[requireFlow(id)]; }

    std::vector<std::string> flowsBetween(std::string const& a, std::string const& b) const
    {
        std::vector<std::string> out;
        for (auto const& f : flows_)
            if (f.from == a && f.to == b)
                out.push_back(f.id);
        return out;
    }

    /// All once-broken flows a -> c -> b through objects c with rigid flows
    /// on both sides, in flow order.
    std::vector<BrokenFlow> brokenFlows(std::string const& a, std::string const& b) const
    {
        std::vector<BrokenFlow> out;
        for (auto const& f1 : flows_) {
            if (f1.from != a)
                continue;
            for (auto const& f2 : flows_)
                if (f2.from == f1.to && f2.to == b)
                    out.push_back(BrokenFlow{f1.to, f1.id, f2.id});
        }
        return out;
    }

    OneDimModuli const* moduliBetween(std::string const& a, std::string const& b) const
    {
        for (auto const& m : moduli_)
            if (m.from == a && m.to == b)
                return &m;
        return nullptr;
    }

    /// a > b: a chain of nonempty morphism data leads from a to b.
    bool greater(std::string const& a, std::string const& b) const
    {
        return reach_[requireObject(a)][requireObject(b)];
    }

    /// Objects directly reachable from a by nonempty morphism data.
    std::vector<std::string> const& successors(std::string const& a) const
    {
        return succ_[requireObject(a)];
    }

    /// Pairs (a, b) of objects with a > b, in object order.
    std::vector<std::pair<std::string, std::string>> comparablePairs() const
    {
        std::vector<std::pair<std::string, std::string>> out;
        for (auto const& a : objects_)
            for (auto const& b : objects_)
                if (greater(a.id, b.id))
                    out.emplace_back(a.id, b.id);
        return out;
    }

private:
    std::size_t requireObject(std::string const& id) const
    {
        auto it = objectPos_.find(id);
        if (it == objectPos_.end())
            throw Error(Errc::InvalidCategory, "unknown object '" + id + "'");
        return it->second;
    }

    std::size_t requireFlow(std::string const& id) const
    {
        auto it = flowPos_.find(id);
        if (it == flowPos_.end())
            throw Error(Errc::InvalidCategory, "unknown flow '" + id + "'");
        return it->second;
    }

    void computeOrder()
    {
        std::size_t const n = objects_.size();
        succ_.assign(n, {});
        std::vector<std::set<std::size_t>> adj(n);
        auto addEdge = [&](std::string const& a, std::string const& b) {
            auto ia = requireObject(a), ib = requireObject(b);
            if (adj[ia].insert(ib).second)
                succ_[ia].push_back(b);
        };
        for (auto const& f : flows_)
            addEdge(f.from, f.to);
        for (auto const& m : moduli_)
            if (!m.components.empty())
                addEdge(m.from, m.to);

        reach_.assign(n, std::vector<bool>(n, false));
        for (std::size_t s = 0; s < n; ++s) {
            std::vector<std::size_t> stack(adj[s].begin(), adj[s].end());
            while (!stack.empty()) {
                auto v = stack.back();
                stack.pop_back();
                if (reach_[s][v])
                    continue;
                reach_[s][v] = true;
                stack.insert(stack.end(), adj[v].begin(), adj[v].end());
            }
        }
    }

    std::vector<CategoryObject> objects_;
    std::vector<RigidFlow> flows_;
    std::vector<OneDimModuli> moduli_;
    std::map<std::string, std::size_t> objectPos_;
    std::map<std::string, std::size_t> flowPos_;
    std::vector<std::vector<std::string>> succ_;
    std::vector<std::vector<bool>> reach_;
};

// ---------------------------------------------------------------------------
// JSON interchange format

inline json categoryToJson(FlowCategory const& cat, OrientationData const& orient)
{
    json j;
    json objs = json::array();
    for (auto const& o : cat.objects())
        objs.push_back({{"id", o.id}, {"index", o.index}});
    j["objects"] = std::move(objs);

    json flows = json::array();
    for (auto const& f : cat.rigidFlows()) {
        auto it = orient.sign.find(f.id);
        flows.push_back({{"id", f.id}, {"from", f.from}, {"to", f.to},
                         {"sign", it == orient.sign.end() ? 1 : it->second}});
    }
    j["rigidFlows"] = std::move(flows);

    json moduli = json::array();
    for (auto const& m : cat.oneDimModuli()) {
        json comps = json::array();
        for (auto const& c : m.components) {
            if (c.kind == ModuliComponent::Kind::Circle) {
                comps.push_back({{"kind", "circle"}});
                continue;
            }
            json ends = json::array();
            for (auto const& e : c.ends)
                ends.push_back(json::array({e.first, e.second}));
            comps.push_back({{"kind", "interval"}, {"ends", std::move(ends)}});
        }
        moduli.push_back({{"from", m.from}, {"to", m.to}, {"components", std::move(comps)}});
    }
    j["oneDimModuli"] = std::move(moduli);
    return j;
}

inline std::pair<FlowCategory, OrientationData> categoryFromJson(json const& j)
{
    if (!j.is_object())
        throw Error(Errc::ParseError, "flow category must be a JSON object");
    std::vector<CategoryObject> objects;
    for (auto const& o : j.value("objects", json::array()))
        objects.push_back({requireField<std::string>(o, "id"), requireField<int>(o, "index")});

    std::vector<RigidFlow> flows;
    OrientationData orient;
    for (auto const& f : j.value("rigidFlows", json::array())) {
        RigidFlow rf{requireField<std::string>(f, "id"), requireField<std::string>(f, "from"),
                     requireField<std::string>(f, "to")};
        int const s = requireField<int>(f, "sign");
        if (s != 1 && s != -1)
            throw Error(Errc::ParseError, "flow '" + rf.id + "' has sign " + std::to_string(s));
        orient.sign[rf.id] = s;
        flows.push_back(std::move(rf));
    }

    std::vector<OneDimModuli> moduli;
    for (auto const& m : j.value("oneDimModuli", json::array())) {
        OneDimModuli md{requireField<std::string>(m, "from"), requireField<std::string>(m, "to"), {}};
        for (auto const& c : m.value("components", json::array())) {
            auto kind = requireField<std::string>(c, "kind");
            if (kind == "circle") {
                md.components.push_back(ModuliComponent::circle());
            } else if (kind == "interval") {
                auto ends = requireField<std::vector<std::vector<std::string>>>(c, "ends");
                if (ends.size() != 2 || ends[0].size() != 2 || ends[1].size() != 2)
                    throw Error(Errc::ParseError, "interval ends must be two [flowId, flowId] pairs");
                md.components.push_back(ModuliComponent::interval(BrokenFlow{"", ends[0][0], ends[0][1]},
                                                                  BrokenFlow{"", ends[1][0], ends[1][1]}));
            } else {
                throw Error(Errc::ParseError, "unknown component kind '" + kind + "'");
            }
        }
        moduli.push_back(std::move(md));
    }
    return {FlowCategory(std::move(objects), std::move(flows), std::move(moduli)), std::move(orient)};
}

} // namespace floerflow
