#include "elascat/specfun.hpp"

#include <cmath>
#include <limits>

// Small-argument regime: direct ascending series of the Bessel functions,
// accumulated in long double to absorb the alternating-series cancellation
// near the regime switch.  Large-argument regime: modulus/phase form
//   J_nu(x) = M_nu(x) cos(theta_nu(x)),  Y_nu(x) = M_nu(x) sin(theta_nu(x)),
// with M_nu, theta_nu from the classical Chebyshev fits on [8, inf)
// (Fullerton's FNLIB coefficients).

namespace elascat::specfun {

namespace {

constexpr double k_bm02cs[40] = {
    0.0950041514522838136933086133556, -3.801864682365670991748081566851e-4,
    2.258339301031481192951829927224e-6, -3.895725802372228764730621412605e-8,
    1.246886416512081697930990529725e-9, -6.065949022102503779803835058387e-11,
    4.008461651421746991015275971045e-12, -3.350998183398094218467298794574e-13,
    3.377119716517417367063264341996e-14, -3.964585901635012700569356295823e-15,
    5.286111503883857217387939744735e-16, -7.852519083450852313654640243493e-17,
    1.280300573386682201011634073449e-17, -2.263996296391429776287099244884e-18,
    4.300496929656790388646410290477e-19, -8.705749805132587079747535451455e-20,
    1.86586271396209514118144277205e-20, -4.210482486093065457345086972301e-21,
    9.956676964228400991581627417842e-22, -2.457357442805313359605921478547e-22,
    6.307692160762031568087353707059e-23, -1.678773691440740142693331172388e-23,
    4.620259064673904433770878136087e-24, -1.311782266860308732237693402496e-24,
    3.834087564116302827747922440276e-25, -1.151459324077741271072613293576e-25,
    3.547210007523338523076971345213e-26, -1.119218385815004646264355942176e-26,
    3.611879427629837831698404994257e-27, -1.190687765913333150092641762463e-27,
    4.005094059403968131802476449536e-28, -1.373169422452212390595193916017e-28,
    4.794199088742531585996491526437e-29, -1.702965627624109584006994476452e-29,
    6.149512428936330071503575161324e-30, -2.255766896581828349944300237242e-30,
    8.3997075092942994860616583532e-31, -3.172997595562602355567423936152e-31,
    1.215205298881298554583333026514e-31, -4.715852749754438693013210568045e-32,
};

constexpr double k_bth0cs[44] = {
    -0.24901780862128936717709793789967, 4.8550299609623749241048615535485e-4,
    -5.4511837345017204950656273563505e-6, 1.3558673059405964054377445929903e-7,
    -5.569139890222762622758321841492e-9, 3.2609031824994335304004205719468e-10,
    -2.4918807862461341125237903877993e-11, 2.3449377420882520554352413564891e-12,
    -2.6096534444310387762177574766136e-13, 3.3353140420097395105869955014923e-14,
    -4.7890000440572684646750770557409e-15, 7.5956178436192215972642568545248e-16,
    -1.3131556016891440382773397487633e-16, 2.4483618345240857495426820738355e-17,
    -4.8805729810618777683256761918331e-18, 1.0327285029786316149223756361204e-18,
    -2.3057633815057217157004744527025e-19, 5.4044443001892693993017108483765e-20,
    -1.3240695194366572724155032882385e-20, 3.3780795621371970203424792124722e-21,
    -8.9457629157111779003026926292299e-22, 2.4519906889219317090899908651405e-22,
    -6.9388422876866318680139933157657e-23, 2.0228278714890138392946303337791e-23,
    -6.0628500002335483105794195371764e-24, 1.864974896403763538182378839627e-24,
    -5.8783732384849894560245036530867e-25, 1.8958591447999563485531179503513e-25,
    -6.2481979372258858959291620728565e-26, 2.1017901684551024686638633529074e-26,
    -7.2084300935209253690813933992446e-27, 2.5181363892474240867156405976746e-27,
    -8.9518042258785778806143945953643e-28, 3.2357237479762298533256235868587e-28,
    -1.1883010519855353657047144113796e-28, 4.4306286907358104820579231941731e-29,
    -1.6761009648834829495792010135681e-29, 6.4292946921207466972532393966088e-30,
    -2.4992261166978652421207213682763e-30, 9.8399794299521955672828260355318e-31,
    -3.9220375242408016397989131626158e-31, 1.5818107030056522138590618845692e-31,
    -6.4525506144890715944344098365426e-32, 2.6611111369199356137177018346367e-32,
};

constexpr double k_bm12cs[40] = {
    0.09807979156233050027272093546937, 0.001150961189504685306175483484602,
    -4.312482164338205409889358097732e-6, 5.951839610088816307813029801832e-8,
    -1.704844019826909857400701586478e-9, 7.798265413611109508658173827401e-11,
    -4.958986126766415809491754951865e-12, 4.038432416421141516838202265144e-13,
    -3.993046163725175445765483846645e-14, 4.619886183118966494313342432775e-15,
    -6.089208019095383301345472619333e-16, 8.960930916433876482157048041249e-17,
    -1.449629423942023122916518918925e-17, 2.546463158537776056165149648068e-18,
    -4.80947287464783644425926371862e-19, 9.687684668292599049087275839124e-20,
    -2.067213372277966023245038117551e-20, 4.64665155915038473180276780959e-21,
    -1.094966128848334138241351328339e-21, 2.693892797288682860905707612785e-22,
    -6.894992910930374477818970026857e-23, 1.83026826275206290989066855474e-23,
    -5.025064246351916428156113553224e-24, 1.423545194454806039631693634194e-24,
    -4.152191203616450388068886769801e-25, 1.244609201503979325882330076547e-25,
    -3.827336370569304299431918661286e-26, 1.205591357815617535374723981835e-26,
    -3.884536246376488076431859361124e-27, 1.278689528720409721904895283461e-27,
    -4.295146689447946272061936915912e-28, 1.470689117829070886456802707983e-28,
    -5.128315665106073128180374017796e-29, 1.819509585471169385481437373286e-29,
    -6.563031314841980867618635050373e-30, 2.404898976919960653198914875834e-30,
    -8.945966744690612473234958242979e-31, 3.37608516065723102663714897824e-31,
    -1.291791454620656360913099916966e-31, 5.008634462958810520684951501254e-32,
};

constexpr double k_bth1cs[44] = {
    0.74749957203587276055443483969695, -0.0012400777144651711252545777541384,
    9.9252442404424527376641497689592e-6, -2.0303690737159711052419375375608e-7,
    7.5359617705690885712184017583629e-9, -4.1661612715343550107630023856228e-10,
    3.0701618070834890481245102091216e-11, -2.8178499637605213992324008883924e-12,
    3.0790696739040295476028146821647e-13, -3.8803300262803434112787347554781e-14,
    5.5096039608630904934561726208562e-15, -8.6590060768383779940103398953994e-16,
    1.4856049141536749003423689060683e-16, -2.7519529815904085805371212125009e-17,
    5.4550796090481089625036223640923e-18, -1.1486534501983642749543631027177e-18,
    2.5535213377973900223199052533522e-19, -5.9621490197413450395768287907849e-20,
    1.4556622902372718620288302005833e-20, -3.7022185422450538201579776019593e-21,
    9.7763074125345357664168434517924e-22, -2.6726821639668488468723775393052e-22,
    7.5453300384983271794038190655764e-23, -2.1947899919802744897892383371647e-23,
    6.5648394623955262178906999817493e-24, -2.0155604298370207570784076869519e-24,
    6.341776855677614349214466718567e-25, -2.0419277885337895634813769955591e-25,
    6.7191464220720567486658980018551e-26, -2.2569079110207573595709003687336e-26,
    7.7297719892989706370926959871929e-27, -2.696744451229464091321142408092e-27,
    9.5749344518502698072295521933627e-28, -3.4569168448890113000175680827627e-28,
    1.2681234817398436504211986238374e-28, -4.7232536630722639860464993713445e-29,
    1.7850008478186376177858619796417e-29, -6.8404361004510395406215223566746e-30,
    2.6566028671720419358293422672212e-30, -1.045040252791445291771416148467e-30,
    4.1618290825377144306861917197064e-31, -1.6771639203643714856501347882887e-31,
    6.8361997776664389173535928028528e-32, -2.817224786123364116673957462281e-32,
};
constexpr double kPi4 = 0.785398163397448309615660845819876;

double cheb_eval(double x, const double* cs, int n) {
  double b0 = 0.0, b1 = 0.0, b2 = 0.0;
  const double twox = 2.0 * x;
  for (int i = n - 1; i >= 0; --i) {
    b2 = b1;
    b1 = b0;
    b0 = twox * b1 - b2 + cs[i];
  }
  return 0.5 * (b0 - b2);
}

// Modulus and phase for x > 8.  J = ampl*cos(theta), Y = ampl*sin(theta).
void modulus_phase(int order, double x, double& ampl, double& theta) {
  const double z = 128.0 / (x * x) - 1.0;
  if (order == 0) {
    ampl = (cheb_eval(z, k_bm02cs, 40) + 0.75) / std::sqrt(x);
    theta = x - kPi4 + cheb_eval(z, k_bth0cs, 44) / x;
  } else {
    ampl = (cheb_eval(z, k_bm12cs, 40) + 0.75) / std::sqrt(x);
    theta = x - 3.0 * kPi4 + cheb_eval(z, k_bth1cs, 44) / x;
  }
}

constexpr long double kGammaL = 0.5772156649015328606065120900824024L;

long double j0_series(long double x) {
  const long double q = 0.25L * x * x;
  long double term = 1.0L, sum = 1.0L;
  for (int k = 1; k <= 80; ++k) {
    term *= -q / (static_cast<long double>(k) * k);
    sum += term;
    if (std::fabs(term) < 1e-22L * std::fabs(sum)) break;
  }
  return sum;
}

long double j1_series(long double x) {
  const long double q = 0.25L * x * x;
  long double term = 1.0L, sum = 1.0L;
  for (int k = 1; k <= 80; ++k) {
    term *= -q / (static_cast<long double>(k) * (k + 1.0L));
    sum += term;
    if (std::fabs(term) < 1e-22L * std::fabs(sum)) break;
  }
  return 0.5L * x * sum;
}

long double y0_series(long double x) {
  const long double q = 0.25L * x * x;
  // sum_{k>=1} (-1)^{k+1} H_k q^k / (k!)^2
  long double term = 1.0L, hk = 0.0L, sum = 0.0L;
  for (int k = 1; k <= 80; ++k) {
    term *= q / (static_cast<long double>(k) * k);
    hk += 1.0L / k;
    const long double c = (k % 2 == 1 ? term : -term) * hk;
    sum += c;
    if (std::fabs(term) * (hk + 1.0L) < 1e-22L * (std::fabs(sum) + 1.0L)) break;
  }
  const long double lg = std::log(0.5L * x) + kGammaL;
  return (2.0L / 3.141592653589793238462643383279502884L) *
         (lg * j0_series(x) + sum);
}

long double y1_series(long double x) {
  const long double q = 0.25L * x * x;
  // sum_{k>=0} (-1)^k (H_k + H_{k+1}) q^k / (k! (k+1)!)
  long double term = 1.0L, hk = 0.0L, hk1 = 1.0L, sum = 1.0L;
  for (int k = 1; k <= 80; ++k) {
    term *= -q / (static_cast<long double>(k) * (k + 1.0L));
    hk += 1.0L / k;
    hk1 += 1.0L / (k + 1.0L);
    const long double c = term * (hk + hk1);
    sum += c;
    if (std::fabs(c) < 1e-22L * (std::fabs(sum) + 1.0L)) break;
  }
  const long double lg = std::log(0.5L * x) + kGammaL;
  return (2.0L / 3.141592653589793238462643383279502884L) *
         (lg * j1_series(x) - 1.0L / x - 0.25L * x * sum);
}

[[noreturn]] void domain_fail(const char* fn, double x) {
  throw std::domain_error(std::string(fn) + ": argument " + std::to_string(x) +
                          " outside the supported domain");
}

}  // namespace

double bessel_j0(double x) {
  if (!(x >= 0.0)) domain_fail("bessel_j0", x);
  if (x <= 8.0) return static_cast<double>(j0_series(x));
  double ampl, theta;
  modulus_phase(0, x, ampl, theta);
  return ampl * std::cos(theta);
}

double bessel_j1(double x) {
  if (!(x >= 0.0)) domain_fail("bessel_j1", x);
  if (x <= 8.0) return static_cast<double>(j1_series(x));
  double ampl, theta;
  modulus_phase(1, x, ampl, theta);
  return ampl * std::cos(theta);
}

double bessel_y0(double x) {
  if (!(x > 0.0)) domain_fail("bessel_y0", x);
  if (x <= 8.0) return static_cast<double>(y0_series(x));
  double ampl, theta;
  modulus_phase(0, x, ampl, theta);
  return ampl * std::sin(theta);
}

double bessel_y1(double x) {
  if (!(x > 0.0)) domain_fail("bessel_y1", x);
  if (x <= 8.0) return static_cast<double>(y1_series(x));
  double ampl, theta;
  modulus_phase(1, x, ampl, theta);
  return ampl * std::sin(theta);
}

HankelPair hankel_pair(double x) {
  if (!(x > 0.0)) domain_fail("hankel_pair", x);
  if (x <= 8.0) {
    return {Cx(static_cast<double>(j0_series(x)), static_cast<double>(y0_series(x))),
            Cx(static_cast<double>(j1_series(x)), static_cast<double>(y1_series(x)))};
  }
  double a0, th0, a1, th1;
  modulus_phase(0, x, a0, th0);
  modulus_phase(1, x, a1, th1);
  return {Cx(a0 * std::cos(th0), a0 * std::sin(th0)),
          Cx(a1 * std::cos(th1), a1 * std::sin(th1))};
}

Cx hankel1(int order, double x) {
  if (order != 0 && order != 1)
    throw std::invalid_argument("hankel1: order must be 0 or 1");
  const HankelPair h = hankel_pair(x);
  return order == 0 ? h.h0 : h.h1;
}

}  // namespace elascat::specfun
