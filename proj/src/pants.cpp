#include "syslab/pants.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <sstream>

namespace syslab {

namespace {

void check_slot(const DecoratedSurface& s, const DecoratedSurface::SlotRef& ref,
                const char* side, int annulus) {
    if (ref.region < 0 || ref.region >= int(s.regions.size()))
        throw ValidationError("annulus " + std::to_string(annulus) + ": " + side +
                              "-side region out of range");
    if (ref.slot < 0 || ref.slot >= s.regions[ref.region].slot_count())
        throw ValidationError("annulus " + std::to_string(annulus) + ": " + side +
                              "-side slot out of range");
}

} // namespace

SurfaceInfo validate_surface(const DecoratedSurface& s) {
    if (s.annuli.empty())
        throw ValidationError("empty loop family: the map would have degree 0");
    if (s.regions.empty())
        throw ValidationError("surface has no complementary regions");

    // Every slot attached to exactly one annulus side.
    std::vector<std::vector<int>> attached(s.regions.size());
    for (size_t r = 0; r < s.regions.size(); ++r)
        attached[r].assign(s.regions[r].slot_count(), 0);
    for (size_t a = 0; a < s.annuli.size(); ++a) {
        check_slot(s, s.annuli[a].side_s, "s", int(a));
        check_slot(s, s.annuli[a].side_n, "n", int(a));
        attached[s.annuli[a].side_s.region][s.annuli[a].side_s.slot]++;
        attached[s.annuli[a].side_n.region][s.annuli[a].side_n.slot]++;
    }
    for (size_t r = 0; r < attached.size(); ++r)
        for (size_t k = 0; k < attached[r].size(); ++k) {
            if (attached[r][k] == 0)
                throw ValidationError("dangling slot " + std::to_string(k) + " on region " +
                                      std::to_string(r));
            if (attached[r][k] > 1)
                throw ValidationError("slot " + std::to_string(k) + " on region " +
                                      std::to_string(r) + " attached more than once");
        }

    // Connectivity of the region/annulus incidence graph.
    std::vector<char> seen(s.regions.size(), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
        const int r = stack.back();
        stack.pop_back();
        for (const auto& a : s.annuli) {
            if (a.side_s.region == r && !seen[a.side_n.region]) {
                seen[a.side_n.region] = 1;
                stack.push_back(a.side_n.region);
            }
            if (a.side_n.region == r && !seen[a.side_s.region]) {
                seen[a.side_s.region] = 1;
                stack.push_back(a.side_s.region);
            }
        }
    }
    if (!std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; }))
        throw ValidationError("region/annulus incidence graph is disconnected");

    int pants = 0;
    for (const auto& r : s.regions)
        if (r.kind == RegionKind::Pants) ++pants;
    const int chi = -pants;
    if ((2 - chi) % 2 != 0)
        throw ValidationError("odd pants count cannot close up to an orientable surface");
    SurfaceInfo info;
    info.euler_characteristic = chi;
    info.genus = (2 - chi) / 2;
    return info;
}

std::vector<std::vector<Marking>> assign_markings(const DecoratedSurface& s) {
    std::vector<std::vector<Marking>> marks(s.regions.size());
    for (size_t r = 0; r < s.regions.size(); ++r)
        marks[r].assign(s.regions[r].slot_count(), Marking::SP);
    for (const auto& a : s.annuli) {
        marks[a.side_s.region][a.side_s.slot] = Marking::SP;
        marks[a.side_n.region][a.side_n.slot] = Marking::NP;
    }
    return marks;
}

namespace {

MapPlan plan_from_markings(const DecoratedSurface& s,
                           std::vector<std::vector<Marking>> marks) {
    MapPlan plan;
    plan.markings = std::move(marks);
    plan.annulus_count = int64_t(s.annuli.size());
    plan.actions.resize(s.regions.size());

    int64_t diffeo_cylinders = 0;
    for (size_t r = 0; r < s.regions.size(); ++r) {
        const auto& m = plan.markings[r];
        const int sp = int(std::count(m.begin(), m.end(), Marking::SP));
        const int np = int(m.size()) - sp;
        RegionAction act;
        if (np == 0) {
            act.kind = RegionAction::CollapseSP;
        } else if (sp == 0) {
            act.kind = RegionAction::CollapseNP;
        } else if (s.regions[r].kind == RegionKind::Cylinder) {
            act.kind = RegionAction::CylinderDiffeo;
            ++diffeo_cylinders;
        } else {
            // Mixed pants: exactly one slot carries the minority marking;
            // subdivide parallel to it. The cylinder piece maps
            // diffeomorphically, the pants piece collapses.
            act.kind = RegionAction::SubdividedPants;
            const Marking lone = (sp == 1) ? Marking::SP : Marking::NP;
            for (size_t k = 0; k < m.size(); ++k)
                if (m[k] == lone) act.lone_slot = int(k);
            ++diffeo_cylinders;
        }
        plan.actions[r] = act;
    }
    plan.degree = plan.annulus_count + diffeo_cylinders;
    return plan;
}

} // namespace

MapPlan build_map_plan(const DecoratedSurface& s) {
    validate_surface(s);
    return plan_from_markings(s, assign_markings(s));
}

FixedMarkingSurface subdivided_surface(const DecoratedSurface& s, const MapPlan& plan) {
    // Replace each subdivided pants by a cylinder (lone boundary + seam)
    // and a pants (two majority slots + seam). Seam slots keep the pole
    // label of the subdividing circle: the majority marking.
    FixedMarkingSurface out;
    std::vector<int> region_map(s.regions.size());  // old -> new (primary piece)
    for (size_t r = 0; r < s.regions.size(); ++r) {
        const auto& act = plan.actions[r];
        if (act.kind != RegionAction::SubdividedPants) {
            region_map[r] = int(out.surface.regions.size());
            out.surface.regions.push_back(s.regions[r]);
            out.fixed.push_back(std::vector<int>(s.regions[r].slot_count(), -1));
        } else {
            // Cylinder piece: slot 0 = the lone boundary, slot 1 = seam.
            const int cyl = int(out.surface.regions.size());
            out.surface.regions.push_back({RegionKind::Cylinder});
            out.fixed.push_back({-1, -1});
            // Pants piece: slots 0,1 = majority boundaries, slot 2 = seam.
            out.surface.regions.push_back({RegionKind::Pants});
            out.fixed.push_back({-1, -1, -1});
            region_map[r] = cyl;

            const auto& m = plan.markings[r];
            const Marking majority =
                (std::count(m.begin(), m.end(), Marking::SP) >= 2) ? Marking::SP
                                                                   : Marking::NP;
            out.fixed[cyl][1] = int(majority);
            out.fixed[cyl + 1][2] = int(majority);
        }
    }

    // Re-route annuli to the split pieces.
    auto route = [&](DecoratedSurface::SlotRef ref) {
        const auto& act = plan.actions[ref.region];
        DecoratedSurface::SlotRef out_ref;
        if (act.kind != RegionAction::SubdividedPants) {
            out_ref.region = region_map[ref.region];
            out_ref.slot = ref.slot;
            return out_ref;
        }
        const int cyl = region_map[ref.region];
        if (ref.slot == act.lone_slot) {
            out_ref.region = cyl;
            out_ref.slot = 0;
        } else {
            out_ref.region = cyl + 1;
            // The two majority slots take pants slots 0 and 1 in order.
            int pos = 0;
            for (int k = 0; k < ref.slot; ++k)
                if (k != act.lone_slot) ++pos;
            out_ref.slot = pos;
        }
        return out_ref;
    };
    for (const auto& a : s.annuli) {
        DecoratedSurface::Annulus b = a;
        b.side_s = route(a.side_s);
        b.side_n = route(a.side_n);
        out.surface.annuli.push_back(b);
    }
    return out;
}

MapPlan build_map_plan_fixed(const FixedMarkingSurface& fs) {
    // Seam slots are not annuli; the closed-surface slot check does not
    // apply to them, so markings are assembled directly.
    auto marks = assign_markings(fs.surface);
    for (size_t r = 0; r < fs.fixed.size(); ++r)
        for (size_t k = 0; k < fs.fixed[r].size(); ++k)
            if (fs.fixed[r][k] >= 0) marks[r][k] = Marking(fs.fixed[r][k]);
    return plan_from_markings(fs.surface, std::move(marks));
}

DecoratedSurface parse_decorated_surface(std::istream& in) {
    DecoratedSurface s;
    std::vector<std::pair<int, RegionKind>> regions;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "region") {
            int id;
            std::string kind;
            if (!(ls >> id >> kind) || (kind != "pants" && kind != "cylinder"))
                throw ValidationError("line " + std::to_string(lineno) +
                                      ": expected `region <id> pants|cylinder`");
            regions.emplace_back(id, kind == "pants" ? RegionKind::Pants
                                                     : RegionKind::Cylinder);
        } else if (tok == "annulus") {
            int loop_id;
            std::string sside, nside;
            if (!(ls >> loop_id >> sside >> nside))
                throw ValidationError("line " + std::to_string(lineno) +
                                      ": expected `annulus <loop_id> s=<r>:<slot> n=<r>:<slot>`");
            auto parse_side = [&](const std::string& spec, const char* prefix) {
                if (spec.rfind(prefix, 0) != 0)
                    throw ValidationError("line " + std::to_string(lineno) +
                                          ": side must start with " + std::string(prefix));
                const auto colon = spec.find(':');
                if (colon == std::string::npos)
                    throw ValidationError("line " + std::to_string(lineno) +
                                          ": side needs <region>:<slot>");
                DecoratedSurface::SlotRef ref;
                try {
                    ref.region = std::stoi(spec.substr(2, colon - 2));
                    ref.slot = std::stoi(spec.substr(colon + 1));
                } catch (const std::exception&) {
                    throw ValidationError("line " + std::to_string(lineno) +
                                          ": malformed side reference");
                }
                return ref;
            };
            DecoratedSurface::Annulus a;
            a.loop_id = loop_id;
            a.side_s = parse_side(sside, "s=");
            a.side_n = parse_side(nside, "n=");
            s.annuli.push_back(a);
        } else {
            throw ValidationError("line " + std::to_string(lineno) + ": unknown directive `" +
                                  tok + "`");
        }
    }
    // Region ids must be 0..n-1 (order in the file is free).
    std::sort(regions.begin(), regions.end());
    for (size_t i = 0; i < regions.size(); ++i)
        if (regions[i].first != int(i))
            throw ValidationError("region ids must form 0..n-1 without gaps");
    s.regions.resize(regions.size());
    for (size_t i = 0; i < regions.size(); ++i) s.regions[i] = {regions[i].second};
    return s;
}

std::string plan_to_json(const DecoratedSurface& s, const MapPlan& plan) {
    const SurfaceInfo info = validate_surface(s);
    std::ostringstream os;
    os << "{\"genus\":" << info.genus
       << ",\"euler_characteristic\":" << info.euler_characteristic
       << ",\"annuli\":" << plan.annulus_count << ",\"markings\":[";
    for (size_t r = 0; r < plan.markings.size(); ++r) {
        if (r) os << ",";
        os << "[";
        for (size_t k = 0; k < plan.markings[r].size(); ++k) {
            if (k) os << ",";
            os << (plan.markings[r][k] == Marking::SP ? "\"SP\"" : "\"NP\"");
        }
        os << "]";
    }
    os << "],\"actions\":[";
    for (size_t r = 0; r < plan.actions.size(); ++r) {
        if (r) os << ",";
        switch (plan.actions[r].kind) {
            case RegionAction::CollapseSP: os << "\"collapse(SP)\""; break;
            case RegionAction::CollapseNP: os << "\"collapse(NP)\""; break;
            case RegionAction::CylinderDiffeo: os << "\"cylinder_diffeo\""; break;
            case RegionAction::SubdividedPants:
                os << "\"subdivided_pants(slot=" << plan.actions[r].lone_slot << ")\"";
                break;
        }
    }
    os << "],\"degree\":" << plan.degree << "}";
    return os.str();
}

DecoratedSurface random_decorated_surface(Rng& rng, int max_genus) {
    // chi = -(#pants) and closed orientable needs an even pants count.
    // Torus (genus 1, zero pants) sits at the low end.
    for (int attempt = 0; attempt < 256; ++attempt) {
        const int genus = 1 + int(rng.uniform() * max_genus);
        const int pants = 2 * (genus - 1);
        const int cylinders = (pants == 0 ? 1 : 0) + int(rng.uniform() * 4.0);

        DecoratedSurface s;
        for (int i = 0; i < pants; ++i) s.regions.push_back({RegionKind::Pants});
        for (int i = 0; i < cylinders; ++i) s.regions.push_back({RegionKind::Cylinder});

        std::vector<DecoratedSurface::SlotRef> slots;
        for (size_t r = 0; r < s.regions.size(); ++r)
            for (int k = 0; k < s.regions[r].slot_count(); ++k)
                slots.push_back({int(r), k});
        if (slots.size() % 2 != 0) continue;  // cannot close up

        // Random perfect matching.
        for (size_t i = slots.size(); i > 1; --i)
            std::swap(slots[i - 1], slots[size_t(rng.uniform() * i)]);
        for (size_t i = 0; i + 1 < slots.size(); i += 2) {
            DecoratedSurface::Annulus a;
            a.loop_id = int(i / 2);
            a.side_s = slots[i];
            a.side_n = slots[i + 1];
            s.annuli.push_back(a);
        }
        try {
            validate_surface(s);
            return s;
        } catch (const ValidationError&) {
            continue;  // disconnected matching; retry
        }
    }
    throw std::runtime_error("random_decorated_surface: no connected surface found");
}

} // namespace syslab
