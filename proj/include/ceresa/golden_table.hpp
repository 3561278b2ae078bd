#pragma once

#include <array>

namespace ceresa {

/// One reference row: modulus, canonical root, and the reduced trace value
/// printed to five significant digits.
struct GoldenRow {
    long n;
    long m;
    const char* value;
};

/// Built-in reference table for f(N, 1), every valid modulus below 1000.
inline constexpr std::array<GoldenRow, 80> kGoldenTable = {{
    {7, 2, "0.64692"},
    {13, 3, "0.30390"},
    {19, 7, "0.15972"},
    {31, 5, "0.68272"},
    {37, 10, "0.53833"},
    {43, 6, "0.94719"},
    {61, 13, "0.10498"},
    {67, 29, "0.67834"},
    {73, 8, "0.67715"},
    {79, 23, "0.70081"},
    {97, 35, "0.67120"},
    {103, 46, "0.20164"},
    {109, 45, "0.21967"},
    {127, 19, "0.75140"},
    {139, 42, "0.89455"},
    {151, 32, "0.20776"},
    {157, 12, "0.65104"},
    {163, 58, "0.47898"},
    {181, 48, "0.68643"},
    {193, 84, "0.65697"},
    {199, 92, "0.53788"},
    {211, 14, "0.92477"},
    {223, 39, "0.14653"},
    {229, 94, "0.48453"},
    {241, 15, "0.77552"},
    {271, 28, "0.95322"},
    {277, 116, "0.88313"},
    {283, 44, "0.97789"},
    {307, 17, "0.66173"},
    {313, 98, "0.96320"},
    {331, 31, "0.88040"},
    {337, 128, "0.61843"},
    {349, 122, "0.57242"},
    {367, 83, "0.70289"},
    {373, 88, "0.55905"},
    {379, 51, "0.13144"},
    {397, 34, "0.54575"},
    {409, 53, "0.59176"},
    {421, 20, "0.86406"},
    {433, 198, "0.085557"},
    {439, 171, "0.20173"},
    {457, 133, "0.055143"},
    {463, 21, "0.24695"},
    {487, 232, "0.82059"},
    {499, 139, "0.89265"},
    {523, 60, "0.12188"},
    {541, 129, "0.20975"},
    {547, 40, "0.13131"},
    {571, 109, "0.86328"},
    {577, 213, "0.83477"},
    {601, 24, "0.16953"},
    {607, 210, "0.27883"},
    {613, 65, "0.91661"},
    {619, 252, "0.91440"},
    {631, 43, "0.50662"},
    {643, 177, "0.72852"},
    {661, 296, "0.43828"},
    {673, 255, "0.20495"},
    {691, 253, "0.58775"},
    {709, 227, "0.79285"},
    {727, 281, "0.33854"},
    {733, 307, "0.12451"},
    {739, 320, "0.44354"},
    {751, 72, "0.78711"},
    {757, 27, "0.10544"},
    {769, 360, "0.62163"},
    {787, 379, "0.10082"},
    {811, 130, "0.17690"},
    {823, 174, "0.22898"},
    {829, 125, "0.86872"},
    {853, 220, "0.57350"},
    {859, 260, "0.89417"},
    {877, 282, "0.70117"},
    {883, 337, "0.26719"},
    {907, 384, "0.49691"},
    {919, 52, "0.47589"},
    {937, 322, "0.94337"},
    {967, 142, "0.71751"},
    {991, 113, "0.94086"},
    {997, 304, "0.79227"},
}};

} // namespace ceresa
