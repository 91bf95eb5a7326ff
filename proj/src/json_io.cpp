#include "siegel/json_io.hpp"

#include <fstream>

namespace siegel {

std::string rat_to_string(const Rat& q) {
  Rat r = q;
  r.canonicalize();
  return r.get_str();
}

Rat rat_from_json(const Json& j) {
  try {
    if (j.is_number_integer()) return Rat(Int(std::to_string(j.get<long long>())));
    if (j.is_string()) {
      Rat r(j.get<std::string>());
      if (r.get_den() == 0) throw ParseError("zero denominator");
      r.canonicalize();
      return r;
    }
  } catch (const std::invalid_argument&) {
  }
  throw ParseError("expected an integer or a rational string, got " + j.dump());
}

Json padic_to_json(const PAdic& x) {
  Json j;
  j["p"] = x.p();
  j["precision"] = x.precision();
  j["valuation"] = x.valuation();
  j["unit"] = x.unit().get_str();
  j["value"] = x.valuation() >= 0 ? x.residue().get_str() : rat_to_string(x.to_rat());
  return j;
}

PAdic padic_from_json(const Json& j, long p, long N) {
  if (j.is_object()) return padic_from_json(j);
  return PAdic::from_rat(rat_from_json(j), p, N);
}

PAdic padic_from_json(const Json& j) {
  try {
    long p = j.at("p").get<long>(), N = j.at("precision").get<long>();
    if (j.contains("unit") && j.contains("valuation"))
      return PAdic::from_parts(p, N, j.at("valuation").get<long>(), Int(j.at("unit").get<std::string>()));
    return PAdic::from_rat(rat_from_json(j.at("value")), p, N);
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad p-adic value: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw ParseError("bad p-adic unit");
  }
}

Json cyc_to_json(const CycNumber& z) {
  Json c = Json::array();
  for (auto& x : z.coeffs()) c.push_back(rat_to_string(x));
  return {{"order", z.order()}, {"coeffs", c}};
}

CycNumber cyc_from_json(const Json& j) {
  if (!j.is_object()) return CycNumber(rat_from_json(j));
  try {
    long m = j.at("order").get<long>();
    std::vector<Rat> c;
    for (auto& x : j.at("coeffs")) c.push_back(rat_from_json(x));
    return CycNumber::from_coeffs(m, c);
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad cyclotomic value: ") + e.what());
  }
}

Json char_to_json(const DirichletChar& c) {
  Json imgs = Json::array();
  for (auto& li : c.generator_images()) imgs.push_back(li.exponent);
  return {{"modulus", c.modulus()}, {"images", imgs}, {"order", c.order()}, {"conductor", c.conductor()}};
}

DirichletChar char_from_json(const Json& j) {
  try {
    if (j.contains("product")) {
      DirichletChar r;
      for (auto& x : j.at("product")) r = r * char_from_json(x);
      return r;
    }
    if (j.contains("kronecker")) return DirichletChar::kronecker(j.at("kronecker").get<long>());
    if (j.contains("omega")) return DirichletChar::teichmuller_char(j.at("p").get<long>()).pow(j.at("omega").get<long>());
    if (j.contains("trivial")) return DirichletChar::trivial(j.at("trivial").get<long>());
    long M = j.at("modulus").get<long>();
    if (j.contains("table")) return DirichletChar::from_table(M, j.at("order").get<long>(), j.at("table").get<std::vector<long>>());
    return DirichletChar::from_images(M, j.at("images").get<std::vector<long>>());
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad character: ") + e.what());
  }
}

Json int_matrix_to_json(const IntMatrix& m) { return Json(m); }

IntMatrix int_matrix_from_json(const Json& j) {
  try {
    IntMatrix m = j.get<IntMatrix>();
    for (auto& row : m)
      if (row.size() != m.size()) throw ParseError("matrix must be square");
    return m;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad matrix: ") + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace siegel
