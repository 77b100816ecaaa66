#pragma once

#include <stdexcept>
#include <string>

namespace nfalias {

/// Base of every error raised by the library. The category names the module
/// the failure originated in and is what the CLI prints before the message.
class Error : public std::runtime_error {
  public:
    Error(std::string category, const std::string& what, int exit_code)
        : std::runtime_error(what), category_(std::move(category)), exit_code_(exit_code) {}

    const std::string& category() const noexcept { return category_; }
    int exit_code() const noexcept { return exit_code_; }

  private:
    std::string category_;
    int exit_code_;
};

class ConfigError : public Error {
  public:
    explicit ConfigError(const std::string& what) : Error("config", what, 2) {}
};

class GeometryError : public Error {
  public:
    explicit GeometryError(const std::string& what) : Error("geometry", what, 3) {}
};

/// An evaluation point fell within the exclusion radius of a source.
class SingularityError : public Error {
  public:
    explicit SingularityError(const std::string& what) : Error("singularity", what, 4) {}
};

class ImagingError : public Error {
  public:
    explicit ImagingError(const std::string& what) : Error("imaging", what, 5) {}
};

class SpectralError : public Error {
  public:
    explicit SpectralError(const std::string& what) : Error("spectral", what, 6) {}
};

class IoError : public Error {
  public:
    explicit IoError(const std::string& what) : Error("io", what, 7) {}
};

}  // namespace nfalias
