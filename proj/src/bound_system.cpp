#include "icc/bound_system.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <utility>

namespace icc {
namespace {

// Positions in rate_variables(side).
enum : int {
  iR1 = 0,   // total rate of user 1
  iR2 = 1,   // total rate of user 2
  iRp = 2,   // user f sends: private, common, cooperative, index
  iRc = 3,
  iRq = 4,
  iRi = 5,
  iLp = 6,   // user f decodes
  iLc = 7,
  iLq = 8,
  iLi = 9,
  ioRc = 10,  // user o sends: common, private, cooperative, index
  ioRp = 11,
  ioRq = 12,
  ioRi = 13,
};

// Positions in the mutual-information evaluator's variable list.
enum : int { bYf, bYo, bYcf, bYco, bM, bN, bG, bH, bU, bV, bS, bW };

constexpr std::uint64_t bit(int b) { return std::uint64_t{1} << b; }

constexpr std::uint64_t mM = bit(bM), mN = bit(bN), mG = bit(bG), mH = bit(bH);
constexpr std::uint64_t mU = bit(bU), mV = bit(bV), mS = bit(bS), mW = bit(bW);

// Joint-decode subsets at receiver f (over M,N,H,U) and at receiver o
// (over V,U,S,N).  Every subset contains the receiver's own private layer
// (M resp. V); the remaining layers range over all combinations, smallest
// subsets first.
constexpr std::array<std::uint64_t, 8> kFSubsets = {
    mM,      mM | mN,      mM | mH,      mM | mU,
    mM | mN | mH, mM | mN | mU, mM | mH | mU, mM | mN | mH | mU};
constexpr std::array<std::uint64_t, 8> kOSubsets = {
    mV,      mV | mU,      mV | mS,      mV | mN,
    mV | mU | mS, mV | mU | mN, mV | mS | mN, mV | mU | mS | mN};

std::vector<VariableId> evaluator_vars(Side side) {
  if (side == Side::Z1) {
    return {"Y1", "Y2", "Yc1", "Yc2", "M1", "N1", "G1", "H1", "U2", "V2", "S2", "W2"};
  }
  return {"Y2", "Y1", "Yc2", "Yc1", "M2", "N2", "G2", "H2", "U1", "V1", "S1", "W1"};
}

// Rate variable charged by each decoded layer.
int f_block_var(int b) {
  switch (b) {
    case bM: return iLp;
    case bN: return iLc;
    case bH: return iLi;
    default: return ioRc;  // bU
  }
}

int o_block_var(int b) {
  switch (b) {
    case bV: return ioRp;
    case bU: return ioRc;
    case bS: return ioRi;
    default: return iLc;  // bN
  }
}

// The twenty-four information bounds, in system row order 4..27.  Every
// decode bound is a conditional mutual information given the layers the
// receiver already knows: conditioning strips the correlation those known
// layers share with the decoded set, which a joint-set form would
// double-count.  The observation side always holds a noisy channel output,
// so the arguments can never be deterministically tied.
void theorem_rhs(MiEvaluator& mi, std::array<double, 24>& out) {
  // Dirty-paper penalties on the four send rates.
  out[0] = -mi.cmi(mM, mS, mN | mH);
  out[1] = -mi.mi(mN, mS);
  out[2] = -mi.mi(mG, mS);
  out[3] = -mi.mi(mH, mS);
  // Joint decoding at receiver f: layers outside the decoded subset are
  // known and condition the observation.
  constexpr std::uint64_t f_block = mM | mN | mH | mU;
  for (int i = 0; i < 8; ++i) {
    const std::uint64_t e = kFSubsets[i];
    out[4 + i] = mi.cmi(bit(bYf), e, f_block & ~e);
  }
  // Cooperative layer: recovered at receiver f beyond the index rate, and
  // from the conference observation.
  out[12] = mi.cmi(bit(bYf), mG, f_block);
  out[13] = mi.cmi(bit(bYcf), mG, mH | mS);
  // Joint decoding at receiver o.
  constexpr std::uint64_t o_block = mV | mU | mS | mN;
  for (int i = 0; i < 8; ++i) {
    const std::uint64_t e = kOSubsets[i];
    out[14 + i] = mi.cmi(bit(bYo), e, o_block & ~e);
  }
  out[22] = mi.cmi(bit(bYo), mW, o_block);
  out[23] = mi.cmi(bit(bYco), mW, mH | mS);
}

// Coefficient matrix shared by every model of one side.  Row order: four
// equality rows, the twenty-four information bounds, fourteen
// non-negativity rows, four send<=decode links.
LinearSystem build_structure(Side side) {
  LinearSystem sys(rate_variables(side));
  auto term = [&sys](int idx, long long c) {
    return std::make_pair(sys.vars[idx], Coeff(c));
  };

  const int tf = side == Side::Z1 ? iR1 : iR2;
  const int to = side == Side::Z1 ? iR2 : iR1;
  sys.add_row({term(tf, 1), term(iRp, -1), term(iRc, -1), term(iRq, -1)}, 0.0);
  sys.add_row({term(tf, -1), term(iRp, 1), term(iRc, 1), term(iRq, 1)}, 0.0);
  sys.add_row({term(to, 1), term(ioRp, -1), term(ioRc, -1), term(ioRq, -1)}, 0.0);
  sys.add_row({term(to, -1), term(ioRp, 1), term(ioRc, 1), term(ioRq, 1)}, 0.0);

  sys.add_row({term(iRp, 1), term(iLp, -1)}, 0.0);
  sys.add_row({term(iRc, 1), term(iLc, -1)}, 0.0);
  sys.add_row({term(iRq, 1), term(iLq, -1)}, 0.0);
  sys.add_row({term(iRi, 1), term(iLi, -1)}, 0.0);
  for (std::uint64_t e : kFSubsets) {
    std::vector<std::pair<RateVar, Coeff>> terms;
    for (int b : {bM, bN, bH, bU}) {
      if (e & bit(b)) terms.push_back(term(f_block_var(b), 1));
    }
    sys.add_row(terms, 0.0);
  }
  sys.add_row({term(iLq, 1), term(iRi, -1)}, 0.0);
  sys.add_row({term(iLq, 1)}, 0.0);
  for (std::uint64_t e : kOSubsets) {
    std::vector<std::pair<RateVar, Coeff>> terms;
    for (int b : {bV, bU, bS, bN}) {
      if (e & bit(b)) terms.push_back(term(o_block_var(b), 1));
    }
    sys.add_row(terms, 0.0);
  }
  sys.add_row({term(ioRq, 1), term(ioRi, -1)}, 0.0);
  sys.add_row({term(ioRq, 1)}, 0.0);

  for (int i = 0; i < 14; ++i) sys.add_row({term(i, -1)}, 0.0);
  for (int pair : {iRp, iRc, iRq, iRi}) {
    sys.add_row({term(pair, 1), term(pair + 4, -1)}, 0.0);
  }
  return sys;
}

PowerSplit reference_split() {
  PowerSplit split;
  split.user1 = {0.2, 0.2, 0.2, 0.2, 0.2};
  split.user2 = {0.2, 0.2, 0.2, 0.2, 0.2};
  return split;
}

}  // namespace

std::vector<RateVar> rate_variables(Side side) {
  const char f = side == Side::Z1 ? '1' : '2';
  const char o = side == Side::Z1 ? '2' : '1';
  auto nm = [](char prefix, char user, char slot) {
    return RateVar{prefix, user, slot};
  };
  return {"R1",           "R2",           nm('R', f, f),  nm('R', f, o),
          nm('R', f, '3'), nm('R', f, '0'), nm('L', f, f),  nm('L', f, o),
          nm('L', f, '3'), nm('L', f, '0'), nm('R', o, f),  nm('R', o, o),
          nm('R', o, '3'), nm('R', o, '0')};
}

LinearSystem bound_system(const ChannelParams& params, const PowerSplit& split,
                          const DpcCoeffs& dpc, Side side) {
  GaussianModel model = build_signal_model(params, split, dpc, side);
  MiEvaluator mi(model, evaluator_vars(side));
  std::array<double, 24> rhs;
  theorem_rhs(mi, rhs);
  LinearSystem sys = build_structure(side);
  for (int i = 0; i < 24; ++i) sys.rows[4 + i].rhs = rhs[i];
  return sys;
}

Polygon2D achievable_polygon(const ChannelParams& params, const PowerSplit& split,
                             const DpcCoeffs& dpc, Side side) {
  LinearSystem reduced = project(bound_system(params, split, dpc, side), {"R1", "R2"});
  auto poly = polygon_from_system(reduced);
  return poly ? std::move(*poly) : Polygon2D{};
}

SideEvaluator::SideEvaluator(const ChannelParams& params, Side side)
    : params_(params),
      side_(side),
      model_(build_signal_model(params, reference_split(), DpcCoeffs{}, side)),
      mi_(model_, evaluator_vars(side)),
      plan_(std::make_shared<const ProjectionPlan>(build_structure(side),
                                                   std::vector<RateVar>{"R1", "R2"})),
      rhs_(46, 0.0) {}

Polygon2D SideEvaluator::polygon(const PowerSplit& split, const DpcCoeffs& dpc) {
  rebuild_signal_model(model_, params_, split, dpc, side_);
  mi_.rebind(model_);
  std::array<double, 24> rhs;
  theorem_rhs(mi_, rhs);
  std::copy(rhs.begin(), rhs.end(), rhs_.begin() + 4);
  auto poly = plan_->polygon(rhs_);
  return poly ? std::move(*poly) : Polygon2D{};
}

}  // namespace icc
