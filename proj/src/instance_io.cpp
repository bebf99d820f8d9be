#include "absrec/instance_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace absrec {

namespace {

constexpr const char* kMagic = "absrec-instance";
constexpr int kVersion = 1;

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_matrix(std::ostream& out, const char* tag, const Matrix& a) {
  out << tag << ' ' << a.rows() << ' ' << a.cols() << '\n';
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      if (j) out << ' ';
      out << format_double(a(i, j));
    }
    out << '\n';
  }
}

void write_vector(std::ostream& out, const char* tag, const Vector& v) {
  out << tag << ' ' << v.size() << '\n';
  for (Index i = 0; i < v.size(); ++i) {
    if (i) out << ' ';
    out << format_double(v(i));
  }
  out << '\n';
}

[[noreturn]] void fail(const std::string& what) {
  throw std::runtime_error("instance file: " + what);
}

void expect_tag(std::istream& in, const char* tag) {
  std::string got;
  if (!(in >> got) || got != tag) fail(std::string("expected '") + tag + "'");
}

double read_double(std::istream& in) {
  std::string token;
  if (!(in >> token)) fail("truncated");
  double v = 0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
  if (res.ec != std::errc{} || res.ptr != token.data() + token.size()) {
    fail("bad number '" + token + "'");
  }
  return v;
}

Matrix read_matrix(std::istream& in, const char* tag) {
  expect_tag(in, tag);
  Index rows = 0, cols = 0;
  if (!(in >> rows >> cols) || rows < 0 || cols < 0) fail("bad matrix header");
  Matrix a(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) a(i, j) = read_double(in);
  }
  return a;
}

Vector read_vector(std::istream& in, const char* tag) {
  expect_tag(in, tag);
  Index len = 0;
  if (!(in >> len) || len < 0) fail("bad vector header");
  Vector v(len);
  for (Index i = 0; i < len; ++i) v(i) = read_double(in);
  return v;
}

}  // namespace

void write_instance(std::ostream& out, const Matrix& omega,
                    const CosparseInstance& inst) {
  out << kMagic << ' ' << kVersion << '\n';
  out << "seed " << inst.seed << '\n';
  out << "delta " << format_double(inst.delta) << '\n';
  out << "rho " << format_double(inst.rho) << '\n';
  write_matrix(out, "omega", omega);
  write_matrix(out, "m_mat", inst.m_mat);
  write_vector(out, "x", inst.x);
  write_vector(out, "y", inst.y);
  out << "cosupport " << inst.cosupport.size() << '\n';
  for (std::size_t i = 0; i < inst.cosupport.indices.size(); ++i) {
    if (i) out << ' ';
    out << inst.cosupport.indices[i];
  }
  out << '\n';
}

void write_instance_file(const std::string& path, const Matrix& omega,
                         const CosparseInstance& inst) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  write_instance(out, omega, inst);
  if (!out) throw std::runtime_error("write failed: " + path);
}

StoredInstance read_instance(std::istream& in) {
  std::string magic;
  int version = 0;
  if (!(in >> magic >> version) || magic != kMagic) fail("bad magic");
  if (version != kVersion) fail("unsupported version");

  StoredInstance out;
  expect_tag(in, "seed");
  if (!(in >> out.instance.seed)) fail("bad seed");
  expect_tag(in, "delta");
  out.instance.delta = read_double(in);
  expect_tag(in, "rho");
  out.instance.rho = read_double(in);
  out.omega = read_matrix(in, "omega");
  out.instance.m_mat = read_matrix(in, "m_mat");
  out.instance.x = read_vector(in, "x");
  out.instance.y = read_vector(in, "y");
  expect_tag(in, "cosupport");
  Index l = 0;
  if (!(in >> l) || l < 0) fail("bad cosupport size");
  out.instance.cosupport.indices.resize(static_cast<std::size_t>(l));
  for (Index i = 0; i < l; ++i) {
    if (!(in >> out.instance.cosupport.indices[static_cast<std::size_t>(i)])) {
      fail("truncated cosupport");
    }
  }
  return out;
}

StoredInstance read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  return read_instance(in);
}

}  // namespace absrec
