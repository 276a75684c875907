#pragma once
#include <string>
namespace hal { int campaign_stub(); }
