# Dual graph hypersurface toolkit
