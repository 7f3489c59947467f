// Entry tables for the structured matrices of the model.
// Generated from validated tables; do not edit by hand.
#pragma once

namespace qd3::tables {

struct Entry { int r; int c; int w; int s; };   // value = s * weight[w]
struct SEntry { int r; int c; int sid; int mod; }; // mod: 0:+1 1:-1 2:e^{-2eta}x 3:2x
struct XEntry { int r; int c; int k; int s; };  // value = s * exp(k*eta)

inline constexpr Entry R_VECTOR[] = {
  {0, 0, 0, 1},
  {1, 1, 1, 1},
  {1, 6, 3, 1},
  {2, 2, 1, 1},
  {2, 12, 3, 1},
  {3, 3, 1, 1},
  {3, 18, 3, 1},
  {4, 4, 1, 1},
  {4, 24, 3, 1},
  {5, 5, 2, 1},
  {5, 10, 5, 1},
  {5, 15, 6, 1},
  {5, 20, 6, 1},
  {5, 25, 7, 1},
  {5, 30, 11, 1},
  {6, 1, 4, 1},
  {6, 6, 1, 1},
  {7, 7, 0, 1},
  {8, 8, 1, 1},
  {8, 13, 3, 1},
  {9, 9, 1, 1},
  {9, 19, 3, 1},
  {10, 5, 8, 1},
  {10, 10, 2, 1},
  {10, 15, 5, 1},
  {10, 20, 5, 1},
  {10, 25, 12, 1},
  {10, 30, 7, 1},
  {11, 11, 1, 1},
  {11, 31, 3, 1},
  {12, 2, 4, 1},
  {12, 12, 1, 1},
  {13, 8, 4, 1},
  {13, 13, 1, 1},
  {14, 14, 0, 1},
  {15, 5, 9, 1},
  {15, 10, 8, 1},
  {15, 15, 2, 1},
  {15, 20, 13, 1},
  {15, 25, 5, 1},
  {15, 30, 6, 1},
  {16, 16, 1, 1},
  {16, 26, 3, 1},
  {17, 17, 1, 1},
  {17, 32, 3, 1},
  {18, 3, 4, 1},
  {18, 18, 1, 1},
  {19, 9, 4, 1},
  {19, 19, 1, 1},
  {20, 5, 9, 1},
  {20, 10, 8, 1},
  {20, 15, 16, 1},
  {20, 20, 2, 1},
  {20, 25, 5, 1},
  {20, 30, 6, 1},
  {21, 21, 0, 1},
  {22, 22, 1, 1},
  {22, 27, 3, 1},
  {23, 23, 1, 1},
  {23, 33, 3, 1},
  {24, 4, 4, 1},
  {24, 24, 1, 1},
  {25, 5, 10, 1},
  {25, 10, 15, 1},
  {25, 15, 8, 1},
  {25, 20, 8, 1},
  {25, 25, 2, 1},
  {25, 30, 5, 1},
  {26, 16, 4, 1},
  {26, 26, 1, 1},
  {27, 22, 4, 1},
  {27, 27, 1, 1},
  {28, 28, 0, 1},
  {29, 29, 1, 1},
  {29, 34, 3, 1},
  {30, 5, 14, 1},
  {30, 10, 10, 1},
  {30, 15, 9, 1},
  {30, 20, 9, 1},
  {30, 25, 8, 1},
  {30, 30, 2, 1},
  {31, 11, 4, 1},
  {31, 31, 1, 1},
  {32, 17, 4, 1},
  {32, 32, 1, 1},
  {33, 23, 4, 1},
  {33, 33, 1, 1},
  {34, 29, 4, 1},
  {34, 34, 1, 1},
  {35, 35, 0, 1}
};

inline constexpr Entry R_PLUS[] = {
  {0, 0, 0, 1},
  {1, 1, 0, 1},
  {2, 2, 0, 1},
  {3, 3, 1, 1},
  {3, 7, 2, -1},
  {3, 12, 3, 1},
  {4, 4, 1, 1},
  {4, 8, 2, 1},
  {4, 18, 3, -1},
  {5, 5, 1, 1},
  {5, 14, 2, -1},
  {5, 19, 3, 1},
  {6, 6, 0, 1},
  {7, 3, 4, -1},
  {7, 7, 1, 1},
  {7, 12, 2, -1},
  {8, 4, 4, 1},
  {8, 8, 1, 1},
  {8, 18, 2, -1},
  {9, 9, 0, 1},
  {10, 10, 0, 1},
  {11, 11, 1, 1},
  {11, 16, 2, 1},
  {11, 21, 3, 1},
  {12, 3, 5, 1},
  {12, 7, 4, -1},
  {12, 12, 1, 1},
  {13, 13, 0, 1},
  {14, 5, 4, -1},
  {14, 14, 1, 1},
  {14, 19, 2, -1},
  {15, 15, 0, 1},
  {16, 11, 4, 1},
  {16, 16, 1, 1},
  {16, 21, 2, 1},
  {17, 17, 0, 1},
  {18, 4, 5, -1},
  {18, 8, 4, -1},
  {18, 18, 1, 1},
  {19, 5, 5, 1},
  {19, 14, 4, -1},
  {19, 19, 1, 1},
  {20, 20, 0, 1},
  {21, 11, 5, 1},
  {21, 16, 4, 1},
  {21, 21, 1, 1},
  {22, 22, 0, 1},
  {23, 23, 0, 1}
};

inline constexpr Entry R_MINUS[] = {
  {0, 0, 0, 1},
  {1, 1, 0, 1},
  {2, 2, 1, 1},
  {2, 7, 2, 1},
  {2, 12, 3, 1},
  {3, 3, 0, 1},
  {4, 4, 1, 1},
  {4, 9, 2, -1},
  {4, 18, 3, -1},
  {5, 5, 1, 1},
  {5, 15, 2, -1},
  {5, 19, 3, 1},
  {6, 6, 0, 1},
  {7, 2, 4, 1},
  {7, 7, 1, 1},
  {7, 12, 2, 1},
  {8, 8, 0, 1},
  {9, 4, 4, -1},
  {9, 9, 1, 1},
  {9, 18, 2, 1},
  {10, 10, 0, 1},
  {11, 11, 1, 1},
  {11, 16, 2, -1},
  {11, 20, 3, -1},
  {12, 2, 5, 1},
  {12, 7, 4, 1},
  {12, 12, 1, 1},
  {13, 13, 0, 1},
  {14, 14, 0, 1},
  {15, 5, 4, -1},
  {15, 15, 1, 1},
  {15, 19, 2, -1},
  {16, 11, 4, -1},
  {16, 16, 1, 1},
  {16, 20, 2, 1},
  {17, 17, 0, 1},
  {18, 4, 5, -1},
  {18, 9, 4, 1},
  {18, 18, 1, 1},
  {19, 5, 5, 1},
  {19, 15, 4, -1},
  {19, 19, 1, 1},
  {20, 11, 5, -1},
  {20, 16, 4, 1},
  {20, 20, 1, 1},
  {21, 21, 0, 1},
  {22, 22, 0, 1},
  {23, 23, 0, 1}
};

inline constexpr Entry R_PM[] = {
  {0, 0, 0, 1},
  {1, 1, 0, 1},
  {2, 2, 0, 1},
  {3, 3, 1, 1},
  {3, 6, 2, 1},
  {3, 9, 3, 1},
  {3, 12, 4, 1},
  {4, 4, 0, 1},
  {5, 5, 0, 1},
  {6, 3, 5, 1},
  {6, 6, 1, 1},
  {6, 9, 2, -1},
  {6, 12, 3, -1},
  {7, 7, 0, 1},
  {8, 8, 0, 1},
  {9, 3, 6, 1},
  {9, 6, 5, -1},
  {9, 9, 1, 1},
  {9, 12, 2, -1},
  {10, 10, 0, 1},
  {11, 11, 0, 1},
  {12, 3, 7, 1},
  {12, 6, 6, -1},
  {12, 9, 5, -1},
  {12, 12, 1, 1},
  {13, 13, 0, 1},
  {14, 14, 0, 1},
  {15, 15, 0, 1}
};

inline constexpr Entry R_SPINOR[] = {
  {0, 0, 0, 1},
  {1, 1, 1, 1},
  {1, 4, 2, 1},
  {2, 2, 1, 1},
  {2, 8, 2, 1},
  {3, 3, 1, 1},
  {3, 12, 2, 1},
  {4, 1, 3, 1},
  {4, 4, 1, 1},
  {5, 5, 0, 1},
  {6, 6, 1, 1},
  {6, 9, 2, 1},
  {7, 7, 1, 1},
  {7, 13, 2, 1},
  {8, 2, 3, 1},
  {8, 8, 1, 1},
  {9, 6, 3, 1},
  {9, 9, 1, 1},
  {10, 10, 0, 1},
  {11, 11, 1, 1},
  {11, 14, 2, 1},
  {12, 3, 3, 1},
  {12, 12, 1, 1},
  {13, 7, 3, 1},
  {13, 13, 1, 1},
  {14, 11, 3, 1},
  {14, 14, 1, 1},
  {15, 15, 0, 1}
};

inline constexpr SEntry S_TABLE[] = {
  {0, 0, 0, 0},
  {1, 1, 0, 1},
  {2, 4, 0, 0},
  {3, 5, 0, 0},
  {4, 3, 1, 0},
  {4, 6, 2, 0},
  {4, 9, 3, 0},
  {4, 12, 4, 0},
  {5, 2, 0, 0},
  {6, 8, 0, 0},
  {7, 3, 5, 0},
  {7, 6, 6, 0},
  {7, 9, 5, 1},
  {7, 12, 6, 0},
  {8, 10, 0, 0},
  {9, 3, 7, 2},
  {9, 6, 8, 3},
  {9, 9, 9, 3},
  {9, 12, 10, 0},
  {10, 13, 0, 0},
  {11, 14, 0, 0},
  {12, 3, 11, 0},
  {12, 12, 12, 0},
  {13, 7, 0, 1},
  {14, 11, 0, 0},
  {15, 15, 0, 1}
};

inline constexpr XEntry V_TABLE[] = {
  {0, 5, -4, 1},
  {1, 4, -2, 1},
  {2, 3, 0, 1},
  {3, 2, 0, 1},
  {4, 1, 2, 1},
  {5, 0, 4, 1}
};

inline constexpr XEntry VBAR_TABLE[] = {
  {0, 3, -3, -1},
  {1, 2, -1, 1},
  {2, 1, 1, -1},
  {3, 0, 3, 1}
};

} // namespace qd3::tables