#ifndef CLASSICA_ERRORS_HPP
#define CLASSICA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace classica {

// Base class for everything the toolkit can throw. The CLI maps these to
// exit status 2 (data error); anything else is a bug.
class error : public std::runtime_error {
public:
  explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input (markup, TSV, CSV, model files). Carries a position when
// one is known.
class parse_error : public error {
public:
  parse_error(const std::string& source, size_t line, size_t column,
              const std::string& msg)
      : error(source + ":" + std::to_string(line) + ":" +
              std::to_string(column) + ": " + msg),
        line_(line), column_(column) {}
  parse_error(const std::string& source, size_t line, const std::string& msg)
      : error(source + ":" + std::to_string(line) + ": " + msg),
        line_(line), column_(0) {}
  explicit parse_error(const std::string& msg) : error(msg), line_(0), column_(0) {}

  size_t line() const { return line_; }
  size_t column() const { return column_; }

private:
  size_t line_;
  size_t column_;
};

// Document contained no character speech at all.
class empty_play_error : public error {
public:
  using error::error;
};

// A POS tag outside the closed mapping of Table-style data.
class no_mapping_error : public error {
public:
  using error::error;
};

// Three-tier ranges collide (play too short).
class split_error : public error {
public:
  using error::error;
};

// Gold/pred corpora differ in length or forms.
class alignment_error : public error {
public:
  using error::error;
};

}  // namespace classica

#endif
