#pragma once

#include <string>
#include <variant>
#include <vector>

#include "mesh.hpp"

namespace gpb {

/// RG402 semi-rigid coax feeding the element. Diameters in mm.
/// Defaults follow catalog RG402 geometry; with PTFE er = 2.1 the
/// (inner, dielectric) pair gives ~49 Ohm characteristic impedance.
struct CoaxModel {
    double inner_mm = 0.92;        // inner conductor diameter (the element)
    double dielectric_mm = 3.0;    // PTFE outer diameter
    double outer_mm = 3.58;        // outer conductor outer diameter
    double element_mm = 57.5;      // exposed element length
    double gap_mm = 2.0;           // Teflon spacer / delta-gap height

    void validate() const;  // throws std::invalid_argument
};

struct PlanarSpec {
    double side_mm = 115.0;
};
struct RibbedPlanarSpec {
    double side_mm = 115.0;
    double rib_height_mm = 3.6;   // lambda/64 of the 230 mm table wavelength
    double rib_width_mm = 1.0;
    int rib_count = 8;
};
struct PlanarDishSpec {
    double side_mm = 115.0;
    double parent_radius_mm = 55.0;  // radius of the sphere the dish is cut from
    double cap_height_mm = 20.0;
};
struct PlanarHornSpec {
    double side_mm = 115.0;
    double lower_length_mm = 25.0;
    double height_mm = 25.0;
    double flare = 2.0;  // upper length = flare * lower length
};
struct PlanarConeSpec {
    double side_mm = 115.0;
    double cone_radius_mm = 20.0;
    double cone_height_mm = 20.0;
};
struct SphereSpec {
    double radius_mm = 57.5;
};
struct SlottedSphereSpec {
    double radius_mm = 57.5;
    double slot_length_mm = 55.0;
    double slot_width_mm = 3.6;
    int slot_count = 8;
};
struct RingedSphereSpec {
    double radius_mm = 57.5;
    std::vector<double> ring_widths_mm = {3.6, 3.6, 3.6};
    double ring_spacing_mm = 20.0;
};
struct EdgeMountedSphereSpec {
    double radius_mm = 57.5;
    double mount_offset_mm = 3.6;  // from the horizontal rim, in plan view
};
struct FinSphereSpec {
    double envelope_radius_mm = 57.5;
    int fin_count = 8;
    double fin_thickness_mm = 1.5;  // metadata; fins are meshed as surfaces
};
struct SpikedSphereSpec {
    double radius_mm = 57.5;
    double spike_length_mm = 10.0;
    double spike_diameter_mm = 3.0;
    double spike_pitch_mm = 23.0;  // between lambda/15 and lambda/4
};

using GroundPlaneSpec =
    std::variant<PlanarSpec, RibbedPlanarSpec, PlanarDishSpec, PlanarHornSpec, PlanarConeSpec,
                 SphereSpec, SlottedSphereSpec, RingedSphereSpec, EdgeMountedSphereSpec,
                 FinSphereSpec, SpikedSphereSpec>;

std::string spec_name(const GroundPlaneSpec& spec);

struct GenerateOptions {
    bool include_element = true;  // append feed frustum, element tube and cap
    int max_triangles = 20000;
};

/// Parametric mesh generation. The mount point is the origin, the element
/// axis is +z. The mount aperture is sized to the coax outer conductor;
/// with include_element the delta-gap feed ring is recorded in feed_edges.
/// Throws std::invalid_argument for dimensionally impossible specs.
TriMesh generate(const GroundPlaneSpec& spec, const CoaxModel& coax, double edge_mm,
                 const GenerateOptions& opt = {});

/// Rim radius of a spherical cap of height h cut from a sphere of radius R.
double dish_true_radius_mm(double parent_radius_mm, double cap_height_mm);

// Dish rim radius printed in the source tables for R=55, h=20. The chord
// formula gives 42.43 mm; the table value likely folds in shell thickness.
inline constexpr double kDishTrueRadiusTableMm = 41.3;

/// Free-space tube dipole fixture: total length L along z centered on the
/// origin, capped ends, delta-gap ring at z = 0.
TriMesh make_tube_dipole(double length_mm, double radius_mm, double seg_mm, int facets = 8);

/// Monopole element for image-ground solves: tube from z = 0 to length_mm,
/// capped top, open base on the ground plane, feed ring at the base.
TriMesh make_image_monopole(double length_mm, double radius_mm, double seg_mm, int facets = 8);

}  // namespace gpb
