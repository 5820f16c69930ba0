#include "gowerk/reference_data.hpp"

#include <initializer_list>

namespace gowerk::reference {

namespace {

Matrix rows(std::initializer_list<std::initializer_list<double>> values) {
  const Index r = static_cast<Index>(values.size());
  const Index c = static_cast<Index>(values.begin()->size());
  Matrix m(r, c);
  Index i = 0;
  for (const auto& row : values) {
    Index j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Index>(values.size()));
  Index i = 0;
  for (double x : values) v(i++) = x;
  return v;
}

}  // namespace

Matrix points() {
  return rows({{77, 113, 125, 99},
               {53, 127, 104, 122},
               {95, 80, 136, 55},
               {20, 83, 12, 2},
               {62, 67, 84, 6},
               {47, 11, 77, 94},
               {30, 87, 26, 90}});
}

Matrix published_distances() {
  return rows({{0, 41.7, 58.9, 162.3, 112.6, 116.8, 113},
               {41.7, 0, 97.4, 160.9, 132.4, 122.5, 96.1},
               {58.9, 97.4, 0, 154.3, 79.8, 109.8, 132.7},
               {162.3, 160.9, 154.3, 0, 85, 136.4, 89.8},
               {112.6, 132.4, 79.8, 85, 0, 105.6, 108.8},
               {116.8, 122.5, 109.8, 136.4, 105.6, 0, 93.2},
               {113, 96.1, 132.7, 89.8, 108.8, 93.2, 0}});
}

Vector published_s() { return vec({0.22, 0.17, 0.08, 0.04, 0.05, 0.04, 0.41}); }
Vector published_s_prime() { return vec({0.13, 0.09, 0.15, 0.12, 0.31, 0.08, 0.11}); }

Vector s() {
  return vec({0.2188173464, 0.1711025769, 0.0766734623, 0.0363713145, 0.0465875523,
              0.0424079750, 0.4080397726});
}

Vector s_prime() {
  return vec({0.1303322431, 0.0878432213, 0.1537408975, 0.1232116057, 0.3147649312,
              0.0804632816, 0.1096438196});
}

Matrix published_kernel() {
  return rows({{3755, 2570.5, 3689.2, -5143.7, -615.5, -1404, -3110.1},
               {2570.5, 3127.9, 367.7, -5238.2, -3362, -2403.5, -1658.6},
               {3689.2, 367.7, 7093.4, -2220.5, 4207.7, 1048.2, -3856.9},
               {-5143.7, -5238.2, -2220.5, 12284.6, 6374.8, 376.3, 3510.2},
               {-615.5, -3362, 4207.7, 6374.8, 7685, 1800.5, -683.6},
               {-1404, -2403.5, 1048.2, 376.3, 1800.5, 7070, 589.9},
               {-3110.1, -1658.6, -3856.9, 3510.2, -683.6, 589.9, 2791.9}});
}

Matrix published_kernel_prime() {
  return rows({{5423.6, 5652.6, 3042.7, -5937.6, -2491.7, -748.2, -867.5},
               {5652.6, 7623.5, 1134.7, -4618.6, -3824.7, -334.2, 1997.5},
               {3042.7, 1134.7, 4131.9, -5329.5, 16.4, -611.1, -3929.4},
               {-5937.6, -4618.6, -5329.5, 9028.2, 2036.1, -1430.4, 3290.3},
               {-2491.7, -3824.7, 16.4, 2036.1, 2264, -1088.5, -1985.8},
               {-748.2, -334.2, -611.1, -1430.4, -1088.5, 6713, 1819.7},
               {-867.5, 1997.5, -3929.4, 3290.3, -1985.8, 1819.7, 5608.4}});
}

Matrix published_embedding() {
  return rows({{-50.8, -31.6, -12.9, -1.5},
               {-52.4, 9.1, -13.8, -10.2},
               {-21.1, -81.3, -4.1, 5.1},
               {107.6, 0.4, -26.1, -4.2},
               {56.4, -65.9, -12.5, -2.4},
               {22.3, -22.8, 77.7, -4.2},
               {34.9, 38.3, 9.1, 5.2}});
}

Matrix published_embedding_prime() {
  return rows({{-71.6, 9.6, -14.3, 0.8},
               {-67.6, 49.2, -24.2, -6.7},
               {-49.2, -40.3, 7, 5.6},
               {90.1, 17.5, -24.3, -2.7},
               {29.8, -37, 0.2, -2.3},
               {-1, 29.1, 76.5, -3},
               {22.2, 71, -2.6, 8.4}});
}

Matrix non_euclidean_distances() {
  return rows({{0, 10, 20, 20, 40, 40},
               {10, 0, 40, 40, 20, 40},
               {20, 40, 0, 40, 40, 20},
               {20, 40, 40, 0, 20, 10},
               {40, 20, 40, 20, 0, 40},
               {40, 40, 20, 10, 40, 0}});
}

Matrix published_non_euclidean_kernel() {
  return rows({{266.7, 316.7, 191.7, 66.7, -408.3, -433.3},
               {316.7, 466.7, -308.3, -433.3, 291.7, -333.3},
               {191.7, -308.3, 516.7, -408.3, -283.3, 291.7},
               {66.7, -433.3, -408.3, 266.7, 191.7, 316.7},
               {-408.3, 291.7, -283.3, 191.7, 516.7, -308.3},
               {-433.3, -333.3, 291.7, 316.7, -308.3, 466.7}});
}

Matrix published_sigma_shift_kernel() {
  return rows({{582.2, 253.6, 128.6, 3.6, -471.4, -496.4},
               {253.6, 782.2, -371.4, -496.4, 228.6, -396.4},
               {128.6, -371.4, 832.2, -471.4, -346.4, 228.6},
               {3.6, -496.4, -471.4, 582.2, 128.6, 253.6},
               {-471.4, 228.6, -346.4, 128.6, 832.2, -371.4},
               {-496.4, -396.4, 228.6, 253.6, -371.4, 782.2}});
}

Matrix published_two_sigma_shift_kernel() {
  return rows({{897.7, 190.5, 65.5, -59.5, -534.5, -559.5},
               {190.5, 1097.7, -434.5, -559.5, 165.5, -459.5},
               {65.5, -434.5, 1147.7, -534.5, -409.5, 165.5},
               {-59.5, -559.5, -534.5, 897.7, 65.5, 190.5},
               {-534.5, 165.5, -409.5, 65.5, 1147.7, -434.5},
               {-559.5, -459.5, 165.5, 190.5, -434.5, 1097.7}});
}

Vector center_weights() { return vec({10, 1, 1, 10, 1, 1}); }

}  // namespace gowerk::reference
