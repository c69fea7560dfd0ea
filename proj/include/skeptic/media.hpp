#pragma once

#include <string>
#include <vector>

namespace skeptic {

struct Frame {
    std::string media_type;  // e.g. "image/jpeg"
    std::string bytes;       // encoded image bytes
};

enum class MediaKind { Image, Video };
std::string to_string(MediaKind kind);

// A visual input prepared for the backend: exactly one frame for images,
// the sampled frame set for videos.
struct MediaInput {
    MediaKind kind = MediaKind::Image;
    std::string source;
    std::vector<Frame> frames;
};

// Uniformly spaced frame indices including the first and last frame.
// Returns all indices when the video is shorter than requested.
std::vector<long> sample_frame_indices(long frame_total, int frame_count);

// Reads an image file as a single frame, sniffing the media type from the
// file signature (extension as fallback).
MediaInput load_image(const std::string& path);

// Decodes a video, keeps frame_count uniformly spaced frames and re-encodes
// them as JPEG attachments.
MediaInput sample_frames(const std::string& video_source, int frame_count);

bool looks_like_video(const std::string& path);

// Dispatches on the file type.
MediaInput load_media(const std::string& path, int frame_count);

}  // namespace skeptic
