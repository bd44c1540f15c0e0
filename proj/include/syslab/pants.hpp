#pragma once
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "syslab/errors.hpp"
#include "syslab/rng.hpp"

namespace syslab {

enum class RegionKind { Pants, Cylinder };
enum class Marking { SP, NP };

/// A closed orientable surface presented as its cut system: regions
/// (pants with 3 boundary slots, cylinders with 2) glued along annuli.
/// Each annulus records which (region, slot) its s- and n-sides attach
/// to; the side assignment is input data.
struct DecoratedSurface {
    struct Region {
        RegionKind kind;
        int slot_count() const { return kind == RegionKind::Pants ? 3 : 2; }
    };
    struct SlotRef {
        int region = -1;
        int slot = -1;
    };
    struct Annulus {
        int loop_id = 0;
        SlotRef side_s;
        SlotRef side_n;
    };
    std::vector<Region> regions;
    std::vector<Annulus> annuli;
};

struct SurfaceInfo {
    int genus = 0;
    int euler_characteristic = 0;
};

/// Checks the closed-surface invariants (every slot attached exactly
/// once, incidence graph connected, nonempty loop family) and derives
/// the genus from the Euler count chi = -(#pants).
SurfaceInfo validate_surface(const DecoratedSurface& s);

/// Marking of every (region, slot): SP on s-sides, NP on n-sides.
std::vector<std::vector<Marking>> assign_markings(const DecoratedSurface& s);

/// Per-region action of the sphere map.
struct RegionAction {
    enum Kind { CollapseSP, CollapseNP, CylinderDiffeo, SubdividedPants } kind;
    // For SubdividedPants: the slot whose side keeps the lone opposite
    // marking (the subdividing circle runs parallel to it).
    int lone_slot = -1;
};

struct MapPlan {
    std::vector<std::vector<Marking>> markings;
    std::vector<RegionAction> actions;
    int64_t degree = 0;
    int64_t annulus_count = 0;
};

/// Lemma 7.3 case analysis: uniform regions collapse to their pole,
/// mixed cylinders map diffeomorphically, mixed pants are subdivided by
/// a circle parallel to the lone boundary (one diffeomorphic cylinder
/// plus one collapsed pants). Degree = #annuli + #diffeomorphic
/// cylinders; always >= #annuli > 0.
MapPlan build_map_plan(const DecoratedSurface& s);

/// Surface induced by the plan's subdivisions, with seam circles fixed
/// to their pole label; rebuilding the plan on it must reproduce the
/// degree.
struct FixedMarkingSurface {
    DecoratedSurface surface;
    // marking overrides for seam slots: (region, slot) -> Marking
    std::vector<std::vector<int>> fixed;  // -1 none, else Marking
};
FixedMarkingSurface subdivided_surface(const DecoratedSurface& s, const MapPlan& plan);
MapPlan build_map_plan_fixed(const FixedMarkingSurface& fs);

/// Line format: `region <id> pants|cylinder` and
/// `annulus <loop_id> s=<region>:<slot> n=<region>:<slot>`.
DecoratedSurface parse_decorated_surface(std::istream& in);
std::string plan_to_json(const DecoratedSurface& s, const MapPlan& plan);

/// Random valid decorated surface of genus <= max_genus (property-test
/// generator).
DecoratedSurface random_decorated_surface(Rng& rng, int max_genus);

} // namespace syslab
