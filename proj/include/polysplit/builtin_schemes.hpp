#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "scheme.hpp"

namespace polysplit {

namespace detail {

// Expand the free half of a palindromic coefficient array to full length n.
// half holds entries 0..ceil(n/2)-1; entry j of the result mirrors n-1-j.
inline std::vector<double> expand_palindrome(const std::vector<double>& half, std::size_t n) {
  std::vector<double> full(n);
  for (std::size_t j = 0; j < n; ++j) full[j] = half[j < n - 1 - j ? j : n - 1 - j];
  return full;
}

inline double sum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

inline SplittingScheme make_aba(std::string name, int order, int stages, DesignClass design,
                                std::vector<double> a_half, std::vector<double> b_half,
                                double l1) {
  SplittingScheme s;
  s.name = std::move(name);
  s.order = order;
  s.stages = stages;
  s.kind = SchemeKind::aba;
  s.design = design;
  s.a = expand_palindrome(a_half, static_cast<std::size_t>(stages) + 1);
  s.b = expand_palindrome(b_half, static_cast<std::size_t>(stages));
  s.l1_declared = l1;
  return s;
}

}  // namespace detail

inline const std::vector<std::string>& builtin_scheme_names() {
  static const std::vector<std::string> names = {"strang", "CA11_6", "CA12_8", "CA22_10",
                                                 "QA19_8"};
  return names;
}

// Built-in method tables.  The high-order entries are ABA compositions whose
// order conditions use the vanishing-commutator structure of polynomial
// forces: CAxx_y solve the cubic-force (degree-2 g) conditions, QA19_8 the
// quartic-force (degree-3 g) ones.  Closure entries are written as the
// defining constraint (sum of the free half) rather than as decimal literals
// so the consistency sums hold to working precision.
inline SplittingScheme builtin_scheme(std::string_view name) {
  using detail::make_aba;
  using detail::sum;

  if (name == "strang") {
    SplittingScheme s;
    s.name = "strang";
    s.order = 2;
    s.stages = 1;
    s.kind = SchemeKind::aba;
    s.design = DesignClass::general;
    s.a = {0.5, 0.5};
    s.b = {1.0};
    return s;
  }

  if (name == "CA11_6") {
    // 6th order, 11 stages, cubic design.
    std::vector<double> ah = {
        0.042694933980191700,   //
        -0.037632511090066230,  //
        0.219222765218418850,   //
        0.172304948988733900,   //
        -0.866412097755661100,  //
    };
    ah.push_back(0.5 - sum(ah));  // a5
    std::vector<double> bh = {
        0.162759370295069398,      //
        -0.0319763989469851006,    //
        0.193876531329159266,      //
        0.153628407800734632,      //
        -0.000976972075829582387,  //
    };
    bh.push_back(1.0 - 2.0 * sum(bh));  // b5, centre entry
    return make_aba("CA11_6", 6, 11, DesignClass::cubic, ah, bh, 5.748);
  }

  if (name == "CA12_8") {
    // 8th order, 12 stages, cubic design (minimal stage count for this class).
    std::vector<double> ah = {
        0.249757865893252399,    //
        0.00573645298706788704,  //
        -0.205722262874388455,   //
        0.205575388768639098,    //
        -0.271817217898894439,   //
        0.489641667780589551,    //
    };
    ah.push_back(1.0 - 2.0 * sum(ah));  // a6, centre entry
    std::vector<double> bh = {
        0.213843067589222296,    //
        -0.19020545357715192,    //
        0.152112874905099611,    //
        0.230725630134443253,    //
        -0.0190391037211012732,  //
    };
    bh.push_back(0.5 - sum(bh));  // b5
    return make_aba("CA12_8", 8, 12, DesignClass::cubic, ah, bh, 4.747);
  }

  if (name == "CA22_10") {
    // 10th order, 22 stages, cubic design (minimal stage count).
    std::vector<double> ah = {
        0.0449093524320847274,   //
        0.206215756187292034,    //
        0.283122139467291742,    //
        -0.0467135692211750245,  //
        0.191753353873687573,    //
        -0.30261984583857599,    //
        0.403507309497133283,    //
        -0.411843791732104965,   //
        0.532623166827988789,    //
        -0.672573105536616394,   //
        0.585892787986557426,    //
    };
    ah.push_back(1.0 - 2.0 * sum(ah));  // a11, centre entry
    std::vector<double> bh = {
        0.12962054755858581,     //
        0.28538465968498975,     //
        0.447546675818306977,    //
        -0.223172488593771899,   //
        -0.168587763117298738,   //
        -0.152330297495996805,   //
        0.0357528743187445468,   //
        0.109308117709693938,    //
        -0.0278888594069430645,  //
        0.0874141139842583174,   //
    };
    bh.push_back(0.5 - sum(bh));  // b10: kick half-sum closes to 1/2
    return make_aba("CA22_10", 10, 22, DesignClass::cubic, ah, bh, 11.372);
  }

  if (name == "QA19_8") {
    // 8th order, 19 stages, quartic design.
    std::vector<double> ah = {
        0.017198824867539785,    //
        0.102745265073641400,    //
        0.184885965868561040,    //
        -0.219582702854432000,   //
        0.114544474826412145,    //
        -0.0380031092293327718,  //
        0.112642307911035366,    //
        0.121499361307126452,    //
        0.169053217437104066,    //
    };
    ah.push_back(0.5 - sum(ah));  // a9
    std::vector<double> bh = {
        0.0575638169530652679,   //
        0.107137729341092432,    //
        0.0185107295436068784,   //
        -0.0195107639666207008,  //
        -0.0766782391416861259,  //
        0.134395138847794067,    //
        0.110620560134710358,    //
        0.137518059034892416,    //
        -0.0368744345203615847,  //
    };
    bh.push_back(1.0 - 2.0 * sum(bh));  // b9, centre entry
    return make_aba("QA19_8", 8, 19, DesignClass::quartic, ah, bh, 3.822);
  }

  throw validation_error("unknown built-in scheme '" + std::string(name) + "'");
}

}  // namespace polysplit
