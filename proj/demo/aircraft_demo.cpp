// Builds the reference aircraft, prints its stability table and a few locus facts.
#include <iostream>

#include "rstab/rstab.hpp"

int main() {
    using namespace rstab;
    const AircraftModel am = build_aircraft_model(reference_model());
    std::cout << "G(s) = " << format_zpk(tf_from_ss(am.augmented.nominal)) << "\n";
    std::cout << "sigma = " << am.mdelta.sigma() << ", nominal loop "
              << (am.mdelta.nominal_stable() ? "stable" : "unstable") << "\n\n";

    const AnalysisResult r = analyze(am.mdelta);
    std::cout << render_table(r.intervals) << "\n";

    const auto& s = r.summary;
    std::cout << "peak |M| = " << s.peak_gain << " at " << s.omega_peak << " rad/s\n";
    std::cout << "Re M in [" << s.x_min << ", " << s.x_max << "]\n";
    for (const auto& c : s.real_axis_crossings)
        std::cout << "crossing w = " << c.omega << "  x = " << c.x << "\n";
    return r.all_verified() ? 0 : 1;
}
