#include "flexmm/matrix.hpp"

#include <string>

namespace flexmm {

namespace {
void require_same(const FieldMatrix& a, const FieldMatrix& b) {
  if (!a.same_shape(b))
    throw ShapeError("matrix shape mismatch: " + std::to_string(a.rows()) + "x" +
                     std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                     std::to_string(b.cols()));
  if (a.field() != b.field()) throw FieldError("matrices live in different fields");
}
}  // namespace

FieldMatrix FieldMatrix::add(const FieldMatrix& o) const {
  require_same(*this, o);
  FieldMatrix r(rows_, cols_, field_);
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = field_.add(data_[i], o.data_[i]);
  return r;
}

FieldMatrix FieldMatrix::sub(const FieldMatrix& o) const {
  require_same(*this, o);
  FieldMatrix r(rows_, cols_, field_);
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = field_.sub(data_[i], o.data_[i]);
  return r;
}

FieldMatrix FieldMatrix::add_scaled(const FieldMatrix& o, Residue s) const {
  require_same(*this, o);
  FieldMatrix r(rows_, cols_, field_);
  for (std::size_t i = 0; i < data_.size(); ++i)
    r.data_[i] = field_.add(data_[i], field_.mul(s, o.data_[i]));
  return r;
}

FieldMatrix FieldMatrix::scale(Residue s) const {
  FieldMatrix r(rows_, cols_, field_);
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = field_.mul(s, data_[i]);
  return r;
}

FieldMatrix FieldMatrix::multiply(const FieldMatrix& o) const {
  if (cols_ != o.rows_)
    throw ShapeError("cannot multiply " + std::to_string(rows_) + "x" + std::to_string(cols_) +
                     " by " + std::to_string(o.rows_) + "x" + std::to_string(o.cols_));
  if (field_ != o.field_) throw FieldError("matrices live in different fields");
  FieldMatrix r(rows_, o.cols_, field_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      Residue a = at(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        r.data_[i * o.cols_ + j] = field_.add(r.data_[i * o.cols_ + j], field_.mul(a, o.at(k, j)));
      }
    }
  }
  return r;
}

FieldMatrix FieldMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr,
                               std::size_t nc) const {
  FieldMatrix r(nr, nc, field_);
  for (std::size_t i = 0; i < nr; ++i) {
    if (r0 + i >= rows_) break;
    for (std::size_t j = 0; j < nc; ++j) {
      if (c0 + j >= cols_) break;
      r.set(i, j, at(r0 + i, c0 + j));
    }
  }
  return r;
}

bool FieldMatrix::is_zero() const {
  for (Residue e : data_)
    if (e != 0) return false;
  return true;
}

}  // namespace flexmm
