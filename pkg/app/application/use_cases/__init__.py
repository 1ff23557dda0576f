# Graph, polynomial, counting and verification services
